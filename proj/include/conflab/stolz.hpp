#pragma once

#include <vector>

#include "conflab/density.hpp"
#include "conflab/geodesic.hpp"
#include "conflab/point.hpp"

namespace conflab {

/// Gamma(omega), the union of the Whitney balls B(t omega, (1 - t)/2) for
/// 0 <= t < 1. It is the disk |x| < 1/2 together with the cone of half-angle
/// 30 degrees with apex omega (x . omega >= 1/4 and sqrt(3) |x_perp| < 1 - x . omega).
class StolzCone {
public:
    /// Deterministic sample: centers t_j omega with t_j = 1 - 2^(-j/2) up to
    /// radius r_limit, each with offsets at 0.3, 0.6 and 0.9 of the Whitney
    /// radius along a fixed star of directions. Throws DomainError unless
    /// |omega| = 1 and 0 < r_limit < 1.
    StolzCone(const Point& omega, double r_limit);

    const Point& omega() const { return omega_; }
    const std::vector<Point>& sample() const { return sample_; }

    bool contains(const Point& x) const;

private:
    Point omega_;
    std::vector<Point> sample_;
};

/// Largest angle between x and omega for x in Gamma(omega) with |x| = r
/// (pi for r < 1/2).
double stolz_half_angle(double r);

/// True when x lies in Gamma(omega).
bool in_stolz_cone(const Point& omega, const Point& x);

/// rho*(omega) approximated by the max of field distances over the cone sample.
double nontangential_max(const GeodesicField& f, const StolzCone& cone);

/// max over the cone sample of rho(x) (1 - |x|).
double cone_sup(const Density& d, const StolzCone& cone);

/// Unit offset directions used by the cone sampler and the HI plan.
std::vector<Point> star_directions(int dim);

}  // namespace conflab
