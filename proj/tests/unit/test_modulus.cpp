#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conflab/curve_family.hpp"
#include "conflab/errors.hpp"
#include "conflab/geodesic.hpp"
#include "conflab/modulus.hpp"

using namespace conflab;

namespace {
constexpr double kPi = std::numbers::pi;
const SolverConfig kSolver = solver_for(Resolution::preset("default"), 2);

// area of {|y| < 1, |y - e1| < r}
double lens(double r) {
    return r * r * std::acos(r / 2.0) + std::acos(1.0 - r * r / 2.0) - 0.5 * r * std::sqrt(4.0 - r * r);
}
}  // namespace

TEST_CASE("radial modulus oracle") {
    CHECK(radial_modulus_oracle(kPi, std::exp(-1.0), 2) == doctest::Approx(kPi));
    CHECK(radial_modulus_oracle(2.0 * kPi, std::exp(-2.0), 2) == doctest::Approx(kPi));
    CHECK(radial_modulus_oracle(4.0 * kPi, std::exp(-1.0), 3) == doctest::Approx(4.0 * kPi));
    CHECK_THROWS_AS(radial_modulus_oracle(kPi, 1.0, 2), DomainError);
    CHECK_THROWS_AS(radial_modulus_oracle(7.0, 0.5, 2), DomainError);
}

TEST_CASE("family generators") {
    const CurveFamily f = make_family("radial:cap=0.5pi,r=0.368,count=64");
    CHECK(f.size() == 64);
    for (const Curve& c : f.curves) {
        CHECK(c.ends_on_sphere());
        CHECK(std::abs(std::atan2(c.vertices.back()[1], c.vertices.back()[0])) < kPi / 4);
    }
    CHECK(make_family(f.descriptor).curves.size() == 64);
    CHECK_THROWS_AS(make_family("radial:r=2"), ValidationError);
    CHECK_THROWS_AS(make_family("helix"), ValidationError);
    const CurveFamily a = perturbed_family(Point(0.5, 0.0), 10, 42);
    const CurveFamily b = perturbed_family(Point(0.5, 0.0), 10, 42);
    CHECK(a.curves[3].vertices[1][1] == b.curves[3].vertices[1][1]);
}

TEST_CASE("numerical modulus matches the oracles") {
    const ModulusResult r = numerical_modulus(make_family("radial:cap=pi,r=0.36787944117144233"), kSolver);
    CHECK(r.upper == doctest::Approx(kPi).epsilon(0.05));
    CHECK(r.lower <= r.upper);
    CHECK(r.min_curve_length >= 1.0);
    CHECK(r.converged);
    const ModulusResult a = numerical_modulus(make_family("annulus:r1=0.2,r2=0.5436563656918091"), kSolver);
    CHECK(a.upper == doctest::Approx(2.0 * kPi).epsilon(0.05));
}

TEST_CASE("modulus monotonicity and scaling") {
    const CurveFamily big = make_family("radial:cap=pi,r=0.5,count=256");
    CurveFamily half = big;
    half.curves.resize(128);
    CHECK(numerical_modulus(half, kSolver).upper <= numerical_modulus(big, kSolver).upper * (1.0 + 1e-6));
    // lengthening every curve
    const double shorter = numerical_modulus(make_family("radial:cap=pi,r=0.5,count=256"), kSolver).upper;
    const double longer = numerical_modulus(make_family("radial:cap=pi,r=0.25,count=256"), kSolver).upper;
    CHECK(longer < shorter);
    // conformal invariance under scaling
    const double m1 = numerical_modulus(make_family("annulus:r1=0.2,r2=0.4"), kSolver).upper;
    const double m2 = numerical_modulus(make_family("annulus:r1=0.4,r2=0.8"), kSolver).upper;
    CHECK(m1 == doctest::Approx(m2).epsilon(0.02));
}

TEST_CASE("modulus edge cases") {
    CurveFamily one;
    one.curves.push_back(Curve{{Point(0.2, 0.1), Point(0.6, 0.3)}});
    const ModulusResult r = numerical_modulus(one, kSolver);
    CHECK_FALSE(r.warnings.empty());
    CHECK(r.min_curve_length >= 1.0);
    CurveFamily tiny;
    tiny.curves.push_back(Curve{{Point(1e-4, 0.0), Point(5e-4, 0.0)}});
    CHECK_THROWS_AS(numerical_modulus(tiny, kSolver), ValidationError);
    CHECK_THROWS_AS(numerical_modulus(CurveFamily{}, kSolver), ValidationError);
}

TEST_CASE("separation check preconditions") {
    const Density d = Density::constant();
    const CurveFamily fam = rho_radial_family(d, 0.05, 0.4, 32);
    std::vector<Point> E;
    for (const Curve& c : fam.curves) E.push_back(c.vertices.front());
    const SeparationReport r = separation_bound_check(d, E, 0.11, 0.4, fam, kSolver);
    CHECK(r.diameter_bound <= 0.11);
    CHECK(r.min_curve_length == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(r.ratio == doctest::Approx(r.modulus.upper * std::log1p(0.4 / 0.11)));
    CHECK_THROWS_AS(separation_bound_check(d, E, 0.11, 0.05, fam, kSolver), PreconditionError);
    CHECK_THROWS_AS(separation_bound_check(d, {Point(0.0, 0.0)}, 0.11, 0.4, fam, kSolver), PreconditionError);
    CHECK_THROWS_AS(separation_bound_check(d, E, 0.11, 0.5, fam, kSolver), PreconditionError);
    CHECK_THROWS_AS(separation_bound_check(d, {Point(0.1, 0.0), Point(-0.1, 0.0)}, 0.11, 0.4, fam, kSolver),
                    PreconditionError);
}

TEST_CASE("cap measure") {
    const auto f = origin_field(Density::constant(), Resolution::preset("coarse"));
    const CapMeasureReport r = cap_measure_test(*f, 4.0, 64);
    CHECK(r.exceptional == 0);
    CHECK(r.measure == 0.0);
    CHECK(r.sigma_sx == doctest::Approx(2.0 * kPi));
    CHECK_THROWS_AS(cap_measure_test(*f, 1.0), DomainError);
    // sigma(S_x) is the cap of half-angle asin((1-|x|)/(2|x|))
    const CapMeasureReport s = cap_measure_test(f->resourced(Point(0.8, 0.0)), 4.0, 16);
    CHECK(s.half_angle == doctest::Approx(std::asin(0.125)));
    CHECK(s.sigma_sx == doctest::Approx(2.0 * std::asin(0.125)));
    CHECK(s.threshold == doctest::Approx(0.8));
}

TEST_CASE("Carleson constants") {
    const CarlesonProbe probe = CarlesonProbe::standard(2, 128);
    CHECK(carleson_constant(DiscreteMeasure{}, probe).alpha == 0.0);
    // sum_{k >= m} 2^-k = 2 * 2^-m against r just above 2^-m
    CHECK(carleson_constant(DiscreteMeasure::dyadic_radial(2), probe).alpha == doctest::Approx(2.0).epsilon(1e-9));
    // area measure: sup of lens(r) / r
    double best = 0.0;
    for (int i = 1; i <= 200000; ++i) best = std::max(best, lens(2.0 * i / 200000) / (2.0 * i / 200000));
    const DiscreteMeasure area = DiscreteMeasure::uniform_volume(2);
    CHECK(area.total() == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(carleson_constant(area, probe).alpha == doctest::Approx(best).epsilon(0.01));
    // refining the probe set never lowers the constant
    CarlesonProbe coarse = CarlesonProbe::standard(2, 64, 20, 4);
    coarse.atom_radii = false;
    CarlesonProbe fine = CarlesonProbe::standard(2, 128, 20, 8);
    fine.atom_radii = false;
    CHECK(carleson_constant(area, fine).alpha >= carleson_constant(area, coarse).alpha);
    CarlesonProbe empty;
    CHECK_THROWS_AS(carleson_constant(area, empty), DomainError);
}
