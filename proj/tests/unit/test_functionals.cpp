#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/functionals.hpp"

using namespace conflab;

namespace {
const Resolution kCoarse = Resolution::preset("coarse");
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("energy against Beta-function values") {
    const AnalysisReport e1 = energy_functional(Density::constant(), 1.0);
    CHECK(e1.verdict() == Verdict::convergent);
    CHECK(*e1.limit.extrapolated == doctest::Approx(kPi).epsilon(1e-6));
    // 2 pi B(2, 1/2) = 8 pi / 3
    const AnalysisReport eh = energy_functional(Density::constant(), 0.5);
    CHECK(eh.verdict() == Verdict::convergent);
    CHECK(*eh.limit.extrapolated == doctest::Approx(8.0 * kPi / 3.0).epsilon(0.01));
    const AnalysisReport e3 = energy_functional(Density::constant(1.0, 3), 1.0);
    CHECK(*e3.limit.extrapolated == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-6));
    CHECK(e1.params["p"] == 1.0);
}

TEST_CASE("energy threshold of the Koebe density") {
    CHECK(energy_functional(Density::koebe(), 0.4).verdict() == Verdict::convergent);
    CHECK(energy_functional(Density::koebe(), 0.6).verdict() == Verdict::divergent);
    CHECK(radial_p_functional(Density::koebe(), 0.25).verdict() == Verdict::convergent);
    CHECK(radial_p_functional(Density::koebe(), 0.75).verdict() == Verdict::divergent);
}

TEST_CASE("radial_p for the constant density") {
    const AnalysisReport r = radial_p_functional(Density::constant(), 1.0);
    CHECK(*r.limit.extrapolated == doctest::Approx(2.0 * kPi).epsilon(1e-6));
}

TEST_CASE("homogeneity of the volume functionals") {
    const Density d = Density::moebius(0.3, 0.2);
    for (double p : {0.5, 1.0, 2.0}) {
        const AnalysisReport a = energy_functional(d, p);
        const AnalysisReport b = energy_functional(d.scaled(2.5), p);
        REQUIRE(a.truncations.size() == b.truncations.size());
        for (std::size_t i = 0; i < a.truncations.size(); ++i)
            CHECK(b.truncations[i].value == doctest::Approx(std::pow(2.5, p) * a.truncations[i].value).epsilon(1e-12));
    }
}

TEST_CASE("Orlicz functionals on the constant density") {
    const auto prof = field_profiles(Density::constant(), kCoarse);
    const GrowthFunction g = GrowthFunction::power(2.0);
    for (OrliczKind kind : kAllOrliczKinds) {
        const AnalysisReport r = orlicz_functional(*prof, g, 1.0, kind);
        CHECK(r.verdict() == Verdict::convergent);
        // delta scaling is exact for power psi
        const AnalysisReport h = orlicz_functional(*prof, g, 0.5, kind);
        for (std::size_t i = 0; i < r.truncations.size(); ++i)
            CHECK(h.truncations[i].value == doctest::Approx(0.25 * r.truncations[i].value).epsilon(1e-12));
    }
    // |omega|_rho = 1, so the boundary functional tends to 2 pi
    const AnalysisReport b = orlicz_functional(*prof, g, 1.0, OrliczKind::boundary);
    CHECK(*b.limit.extrapolated == doctest::Approx(2.0 * kPi).epsilon(0.05));
    CHECK_THROWS_AS(orlicz_functional(*prof, g, 0.0, OrliczKind::boundary), DomainError);
    CHECK(parse_orlicz_kind("maxmod") == OrliczKind::maxmod);
    CHECK_THROWS(parse_orlicz_kind("median"));
}

TEST_CASE("characterize") {
    const auto deltas = default_delta_scan();
    CHECK(deltas.size() == 9);
    CHECK(deltas.front() == 1.0);
    CHECK(deltas.back() == 1.0 / 256.0);
    const Characterization c = characterize(*field_profiles(Density::constant(), kCoarse), GrowthFunction::power(1.0));
    CHECK(c.consistent);
    CHECK(c.overall == Verdict::convergent);
    CHECK(c.kinds.size() == 4);
    const Characterization k = characterize(*field_profiles(Density::koebe(), kCoarse), GrowthFunction::power(1.0));
    CHECK(k.consistent);
    CHECK(k.overall == Verdict::divergent);
}

TEST_CASE("the interior condition is strictly stronger") {
    const GrowthFunction g = GrowthFunction::log_doubling();
    CHECK(interior_psi_functional(Density::constant(), g).verdict() == Verdict::divergent);
    const auto prof = field_profiles(Density::constant(), kCoarse);
    CHECK(orlicz_functional(*prof, g, 1.0, OrliczKind::boundary).verdict() == Verdict::convergent);
}

TEST_CASE("classify_report degrades to inconclusive") {
    AnalysisReport r;
    r.truncations = {{1, 1.0}, {2, 2.0}};
    classify_report(r, {});
    CHECK(r.verdict() == Verdict::inconclusive);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("beta estimate of a bounded metric") {
    const BetaEstimate b = estimate_beta_p0(*origin_field(Density::constant(), kCoarse));
    CHECK(std::isinf(b.p0));
    CHECK(b.beta == 1.0);
    CHECK_THROWS_AS(estimate_beta_p0(build_field(Density::constant(), Point(0.1, 0.0), kCoarse)), PreconditionError);
}
