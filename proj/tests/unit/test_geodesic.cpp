#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/geodesic.hpp"
#include "conflab/stolz.hpp"

using namespace conflab;

namespace {
const Resolution kDefault = Resolution::preset("default");
const Resolution kCoarse = Resolution::preset("coarse");
}  // namespace

TEST_CASE("presets") {
    CHECK(kCoarse.h == 0.05);
    CHECK(kCoarse.K == 8);
    CHECK(kDefault.h == 0.02);
    CHECK(Resolution::preset("fine").K == 12);
    CHECK_THROWS_AS(Resolution::preset("huge"), ValidationError);
}

TEST_CASE("grid shells follow the Whitney scale") {
    const auto g = ShellGrid::shared(2, kCoarse);
    for (int k = 1; k <= kCoarse.K; ++k)
        CHECK(g->shell_radius(g->shell_at_level(k)) == doctest::Approx(1.0 - std::ldexp(1.0, -k)).epsilon(1e-15));
    for (int j = 0; j < g->shell_count(); ++j)
        CHECK(g->shell_step(j) <= (1.0 - g->shell_radius(j)) / 4.0 * (1.0 + 1e-9) + 1e-15);
    double vol = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) vol += g->cell_volume(i);
    // cells tile the disk of the outer radius
    const double R = g->outer_radius();
    CHECK(vol == doctest::Approx(std::numbers::pi * R * R).epsilon(0.01));
}

TEST_CASE("node budget is enforced") {
    Resolution r = kDefault;
    r.node_budget = 1000;
    CHECK_THROWS_AS(ShellGrid(2, r), CapacityError);
}

TEST_CASE("constant density distances") {
    const auto f = origin_field(Density::constant(), kDefault);
    CHECK(f->distance(Point(0.5, 0.0)) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(f->distance(Point(0.3, 0.4)) == doctest::Approx(0.5).epsilon(0.02));
    const BoundaryDistance b = f->boundary_distance(Point(0.0, -1.0));
    CHECK(b.limit.verdict == Verdict::convergent);
    CHECK(b.value == doctest::Approx(1.0).epsilon(0.02));
    CHECK(f->max_modulus(0.5) == doctest::Approx(0.5).epsilon(0.02));
    // the reported distance bounds the true one from above
    CHECK(f->distance(Point(0.6, 0.7)) >= std::hypot(0.6, 0.7) * (1.0 - 1e-12));
}

TEST_CASE("closed-form geodesics") {
    const auto p = origin_field(Density::power(0.5), kDefault);
    CHECK(p->distance(Point(0.75, 0.0)) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(p->boundary_distance(Point(1.0, 0.0)).value == doctest::Approx(2.0).epsilon(0.03));
    const auto k = origin_field(Density::koebe(), kDefault);
    CHECK(k->distance(Point(-0.5, 0.0)) == doctest::Approx(2.0 / 9.0).epsilon(0.03));
    CHECK(k->boundary_distance(Point(-1.0, 0.0)).value == doctest::Approx(0.25).epsilon(0.03));
    CHECK(k->boundary_distance(Point(1.0, 0.0)).limit.verdict == Verdict::divergent);
    CHECK(k->max_modulus(0.5) == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("graph invariants") {
    const Density d = Density::koebe();
    const GeodesicField f = build_field(d, Point(0.2, -0.1), kCoarse);
    const ShellGrid& g = f.grid();
    std::size_t bad = 0;
    for (std::size_t u = 0; u < g.size(); ++u) {
        const auto nb = g.neighbors(u);
        const auto w = f.graph().weights(u);
        for (std::size_t j = 0; j < nb.size(); ++j) {
            if (!(w[j] > 0.0)) ++bad;
            if (f.node_distance(nb[j]) > f.node_distance(u) + w[j] * (1.0 + 1e-12)) ++bad;
        }
    }
    CHECK(bad == 0);
    CHECK(f.distance(Point(0.2, -0.1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("homogeneity and monotonicity") {
    const Density d = Density::moebius(0.5, 0.0);
    const auto f1 = origin_field(d, kCoarse);
    const auto f3 = origin_field(d.scaled(3.0), kCoarse);
    for (const Point& y : {Point(0.1, 0.2), Point(-0.7, 0.3), Point(0.0, 0.95)})
        CHECK(f3->distance(y) == doctest::Approx(3.0 * f1->distance(y)).epsilon(1e-12));
    CHECK(f3->max_modulus(0.9) == doctest::Approx(3.0 * f1->max_modulus(0.9)).epsilon(1e-12));
    double prev = 0.0;
    for (double r : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const double m = f1->max_modulus(r);
        CHECK(m >= prev);
        // sphere points between shells reach slightly past the node maximum
        if (r > 0.0) CHECK(f1->sphere_sup(r) <= m * 1.03);
        prev = m;
    }
    CHECK_THROWS_AS(f1->max_modulus(1.0), DomainError);
    CHECK_THROWS_AS(f1->distance(Point(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(f1->resourced(Point(0.3, 0.0)).max_modulus(0.5), PreconditionError);
}

TEST_CASE("three-dimensional field") {
    const auto f = origin_field(Density::constant(1.0, 3), kCoarse);
    CHECK(f->distance(Point(0.3, 0.4, 0.5)) == doctest::Approx(std::sqrt(0.5)).epsilon(0.03));
    CHECK(f->boundary_distance(Point(0.0, 0.0, 1.0)).value == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("Stolz cones") {
    // brute-force half angle at a few radii
    for (double r : {0.55, 0.7, 0.9, 0.99}) {
        double best = 0.0;
        for (int i = 0; i <= 200000; ++i) {
            const double t = std::numbers::pi * i / 200000;
            if (in_stolz_cone(Point(1.0, 0.0), Point(r * std::cos(t), r * std::sin(t)))) best = t;
        }
        CHECK(stolz_half_angle(r) == doctest::Approx(best).epsilon(1e-4));
    }
    CHECK(stolz_half_angle(0.3) == doctest::Approx(std::numbers::pi));
    const Point w(0.6, 0.8);
    const StolzCone cone(w, 0.99);
    for (const Point& x : cone.sample()) {
        CHECK(cone.contains(x));
        CHECK(x.norm() <= 0.99);
    }
    const double cs = cone_sup(Density::constant(), cone);
    CHECK(cs <= 1.0);
    CHECK(cs >= 0.8);
    const auto f = origin_field(Density::constant(), kDefault);
    const double nt = nontangential_max(*f, cone);
    CHECK(nt <= 1.0 * 1.02);
    CHECK(nt >= 0.95);
    CHECK_THROWS_AS(StolzCone(Point(0.5, 0.0), 0.9), DomainError);
}
