#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/catalog_id.hpp"
#include "conflab/density.hpp"
#include "conflab/errors.hpp"
#include "conflab/harnack.hpp"

using namespace conflab;

TEST_CASE("catalog ids parse and print canonically") {
    const CatalogId id = CatalogId::parse("radial:r=0.5,cap=0.5pi");
    CHECK(id.name == "radial");
    CHECK(id.get("cap", 0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(id.str() == CatalogId::parse(id.str()).str());
    CHECK(parse_real("pi") == std::numbers::pi);
    CHECK_THROWS_AS(parse_real("abc"), ValidationError);
}

TEST_CASE("catalog densities match their formulas") {
    // constant
    CHECK(Density::constant(2.0)(Point(0.3, 0.1)) == 2.0);
    // (1 - 0.75)^(-1/2) = 2
    CHECK(Density::power(0.5)(Point(0.75, 0.0)) == doctest::Approx(2.0).epsilon(1e-14));
    // |f'(z)| = |1 + z| / |1 - z|^3
    const Density k = Density::koebe();
    CHECK(k(Point(-0.5, 0.0)) == doctest::Approx(0.5 / 3.375).epsilon(1e-14));
    CHECK(k(Point(0.5, 0.0)) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(k(Point(0.0, 0.5)) == doctest::Approx(std::sqrt(1.25) / std::pow(1.25, 1.5)).epsilon(1e-14));
    // rotation moves the pole
    CHECK(Density::koebe(std::numbers::pi / 2)(Point(0.0, 0.5)) == doctest::Approx(12.0).epsilon(1e-13));
    // (1 - |a|^2) / |1 - conj(a) z|^2
    const Density m = Density::moebius(0.5, 0.0);
    CHECK(m(Point(0.0, 0.0)) == doctest::Approx(0.75));
    CHECK(m(Point(0.5, 0.0)) == doctest::Approx(0.75 / 0.5625));
    CHECK(Density::constant(1.0, 3)(Point(0.1, 0.2, 0.3)) == 1.0);
}

TEST_CASE("koebe stays accurate next to the boundary") {
    const Density k = Density::koebe();
    const double s = 1e-9;
    // |1 + z| / |1 - z|^3 at z = -(1 - s)
    CHECK(k(Point(-(1.0 - s), 0.0)) == doctest::Approx(s / 8.0).epsilon(1e-6));
    CHECK(k(Point(1.0 - 1e-4, 0.0)) == doctest::Approx((2.0 - 1e-4) / 1e-12).epsilon(1e-9));
}

TEST_CASE("ids round-trip and scale") {
    for (const char* id : {"constant", "power:alpha=0.25", "koebe:theta=1.2", "moebius:a=0.3,b=-0.2", "power:alpha=0.5,n=3"}) {
        const Density d = Density::from_id(id);
        CHECK(Density::from_id(d.id()).id() == d.id());
    }
    const Density d = Density::from_id("koebe:scale=3");
    CHECK(d(Point(0.5, 0.0)) == doctest::Approx(36.0));
    CHECK(Density::koebe().scaled(2.0)(Point(0.2, 0.1)) == doctest::Approx(2.0 * Density::koebe()(Point(0.2, 0.1))));
}

TEST_CASE("density errors") {
    CHECK_THROWS_AS(Density::power(1.0), ValidationError);
    CHECK_THROWS_AS(Density::constant(0.0), ValidationError);
    CHECK_THROWS_AS(Density::moebius(1.0, 0.0), ValidationError);
    CHECK_THROWS_AS(Density::from_id("spline"), ValidationError);
    CHECK_THROWS_AS(Density::from_id("power:beta=2"), ValidationError);
    CHECK_THROWS_AS(Density::from_id("koebe:n=3"), ValidationError);
    CHECK_THROWS_AS(Density::constant()(Point(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(Density::constant()(Point(0.1, 0.0, 0.0)), ValidationError);
}

TEST_CASE("Harnack check") {
    const HarnackReport c = check_hi(Density::constant(), HarnackPlan::standard(2));
    CHECK(c.a_emp == 1.0);
    CHECK(c.pass);
    const HarnackReport p = check_hi(Density::power(0.5), HarnackPlan::standard(2));
    CHECK(p.a_emp > 1.0);
    CHECK(p.a_emp <= std::sqrt(3.0));
    CHECK(p.pass);
    for (const char* id : {"koebe", "moebius", "power:alpha=0.25,n=3"}) {
        const Density d = Density::from_id(id);
        const HarnackPlan plan = HarnackPlan::standard(d.dim());
        const HarnackReport r = check_hi(d, plan);
        CHECK(r.pass);
        // scale invariance
        CHECK(check_hi(d.scaled(2.0), plan).a_emp == doctest::Approx(r.a_emp).epsilon(1e-12));
    }
}
