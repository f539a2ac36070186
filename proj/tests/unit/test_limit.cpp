#include <doctest.h>

#include <cmath>
#include <vector>

#include "conflab/errors.hpp"
#include "conflab/limit.hpp"

using namespace conflab;

namespace {
std::vector<TruncationValue> seq(int k0, int k1, double (*f)(int)) {
    std::vector<TruncationValue> v;
    for (int k = k0; k <= k1; ++k) v.push_back({k, f(k)});
    return v;
}
}  // namespace

TEST_CASE("geometric tails converge and extrapolate") {
    const auto v = seq(1, 10, [](int k) { return 1.0 - std::ldexp(1.0, -k); });
    const LimitResult r = classify_limit(v);
    CHECK(r.verdict == Verdict::convergent);
    REQUIRE(r.extrapolated);
    CHECK(*r.extrapolated == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.ratio == doctest::Approx(0.5));
}

TEST_CASE("growing sequences diverge") {
    CHECK(classify_limit(seq(1, 10, [](int k) { return double(k); })).verdict == Verdict::divergent);
    CHECK(classify_limit(seq(1, 10, [](int k) { return std::exp2(k); })).verdict == Verdict::divergent);
    // harmonic partial sums: increments ~ 1/k. Over short windows 1/k still
    // looks geometric, so give it enough levels.
    CHECK(classify_limit(seq(1, 30, [](int k) {
              double s = 0.0;
              for (int j = 1; j <= k; ++j) s += 1.0 / j;
              return s;
          })).verdict == Verdict::divergent);
}

TEST_CASE("flat sequences converge to their value") {
    const LimitResult r = classify_limit(seq(1, 6, [](int) { return 3.5; }));
    CHECK(r.verdict == Verdict::convergent);
    CHECK(*r.extrapolated == 3.5);
}

TEST_CASE("classifier contract") {
    CHECK_THROWS_AS(classify_limit(seq(1, 3, [](int k) { return double(k); })), DataError);
    CHECK_THROWS_AS(classify_limit(seq(1, 8, [](int k) { return 10.0 - k; })), DataError);
}
