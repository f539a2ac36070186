#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/curve_family.hpp"
#include "conflab/errors.hpp"
#include "conflab/metric_checks.hpp"

using namespace conflab;

TEST_CASE("Gehring-Hayman ratios where the radial segment is geodesic") {
    const Point x(0.9, 0.0);
    const GhReport c = gh_ratio(Density::constant(), x, perturbed_family(x, 100, 1));
    CHECK(c.ratio == 1.0);
    CHECK(c.radial == doctest::Approx(0.9).epsilon(1e-12));
    const Point y(-0.9, 0.0);
    CHECK(gh_ratio(Density::koebe(), y, perturbed_family(y, 100, 2)).ratio <= 1.0 + 1e-6);
    const Point w(0.0, -1.0);
    CurveFamily spirals = spiral_family(w, 50, 3);
    const GhReport p = gh_ratio(Density::power(0.5), w, spirals);
    CHECK(p.boundary);
    CHECK(p.ratio <= 1.0);
    // truncated at 1 - 2^-20: 2 (1 - 2^-10)
    CHECK(p.radial == doctest::Approx(2.0 * (1.0 - std::ldexp(1.0, -10))).epsilon(1e-9));
}

TEST_CASE("Gehring-Hayman input checks") {
    CurveFamily bad;
    bad.curves.push_back(Curve{{Point(0.0, 0.0), Point(0.5, 0.1)}});
    CHECK_THROWS_AS(gh_ratio(Density::constant(), Point(0.5, 0.0), bad), ValidationError);
    CHECK_THROWS_AS(gh_ratio(Density::constant(), Point(0.0, 0.0), bad), DomainError);
}

TEST_CASE("volume growth of the constant density") {
    const Density d = Density::constant();
    const Resolution res = Resolution::preset("default");
    // euclidean disks inside the unit disk: mu / r^2 = pi
    const VgReport r = check_vg(d, {{Point(0.0, 0.0), 0.5}, {Point(0.3, 0.2), 0.2}}, res);
    for (const VgPair& p : r.pairs) {
        CHECK(p.b == doctest::Approx(std::numbers::pi).epsilon(0.02));
        CHECK_FALSE(p.lower_bound_only);
    }
    REQUIRE(r.pass);
    CHECK(*r.pass);
    // a ball that leaves the disk counts only what lies inside
    const VgReport big = check_vg(d, {{Point(0.0, 0.0), 2.0}}, res);
    CHECK(big.pairs[0].lower_bound_only);
    CHECK(big.pairs[0].mu == doctest::Approx(std::numbers::pi).epsilon(0.01));
    CHECK_THROWS_AS(check_vg(d, {}, res), DomainError);
}

TEST_CASE("Whitney-scaled VG samples") {
    const auto s = whitney_vg_samples(Density::power(0.5), {Point(0.75, 0.0)}, {1.0, 2.0});
    REQUIRE(s.size() == 2);
    CHECK(s[0].r == doctest::Approx(0.5));
    CHECK(s[1].r == doctest::Approx(1.0));
}
