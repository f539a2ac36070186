#include <doctest.h>

#include <cmath>

#include "conflab/errors.hpp"
#include "conflab/growth.hpp"

using namespace conflab;

TEST_CASE("power growth function") {
    const GrowthFunction g = GrowthFunction::power(0.5);
    CHECK(g(4.0) == doctest::Approx(2.0));
    CHECK(g.derivative(4.0) == doctest::Approx(0.25));
    CHECK(g.inverse(2.0) == doctest::Approx(4.0));
    const GrowthSample s = growth_eval(g, 9.0);
    CHECK(s.psi == doctest::Approx(3.0));
    CHECK(s.roundtrip == doctest::Approx(9.0));
    CHECK_THROWS_AS(growth_eval(g, -1.0), DomainError);
    CHECK(GrowthFunction::from_id("power_psi:p=0.4").exponent() == 0.4);
}

TEST_CASE("log_doubling growth function") {
    const GrowthFunction g = GrowthFunction::log_doubling();
    CHECK(g(0.25) == doctest::Approx(1.0 / std::log(4.0)));
    CHECK(g(1.0) == doctest::Approx(2.0 / std::log(2.0)));
    // continuous at the corner, right derivative there
    CHECK(g(0.5) == doctest::Approx(1.0 / std::log(2.0)));
    CHECK(g(0.5 - 1e-12) == doctest::Approx(1.0 / std::log(2.0)));
    CHECK(g.derivative(0.5) == doctest::Approx(2.0 / std::log(2.0)));
    CHECK(g(0.0) == 0.0);
    for (double t : {1e-6, 0.1, 0.3, 0.5, 2.0, 100.0}) CHECK(g.inverse(g(t)) == doctest::Approx(t).epsilon(1e-10));
}

TEST_CASE("growth properties") {
    const GrowthGrid grid = GrowthGrid::standard();
    const GrowthProperties p2 = growth_properties(GrowthFunction::power(2.0), grid);
    CHECK(p2.doubling_constant == doctest::Approx(4.0));
    CHECK(p2.superadditive);
    CHECK_FALSE(p2.concave);
    // (ab)^p <= b (Ca)^p holds with C = 1 when p >= 1
    REQUIRE(p2.multiplicative_c);
    CHECK(*p2.multiplicative_c == 1.0);

    const GrowthProperties ph = growth_properties(GrowthFunction::power(0.5), grid);
    CHECK(ph.doubling_constant == doctest::Approx(std::sqrt(2.0)));
    CHECK_FALSE(ph.superadditive);
    CHECK(ph.concave);
    CHECK_FALSE(ph.multiplicative_c);

    const GrowthProperties pl = growth_properties(GrowthFunction::log_doubling(), grid);
    CHECK(std::isfinite(pl.doubling_constant));
    CHECK_FALSE(pl.multiplicative_c);
}
