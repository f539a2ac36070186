#pragma once

#include <span>
#include <vector>

#include "conflab/density.hpp"
#include "conflab/limit.hpp"
#include "conflab/point.hpp"

namespace conflab {

/// Polyline in the closed ball. Interior vertices must lie in the open ball;
/// endpoints may sit on the sphere only when closed_ball_ok is set.
struct Curve {
    std::vector<Point> vertices;
    bool closed_ball_ok = false;

    int dim() const { return vertices.empty() ? 0 : vertices.front().dim; }
    /// Throws ValidationError describing the first violated invariant.
    void validate() const;
    bool starts_on_sphere() const;
    bool ends_on_sphere() const;
    double euclidean_length() const;
};

/// Composite Gauss-Legendre along each segment. Sub-intervals are no longer
/// than step_fraction times the distance to the sphere over the sub-interval,
/// so every panel sits well inside one Whitney ball.
struct QuadratureConfig {
    int gl_order = 6;
    double step_fraction = 0.125;
};

/// Gauss-Legendre nodes on [-1, 1] with positive weights (n in [1, 64]).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// rho-length of the straight segment [a, b] with both ends in the open ball.
double segment_rho_length(const Density& d, const Point& a, const Point& b, const QuadratureConfig& quad = {});

/// rho-length of a curve whose vertices all lie in the open ball.
/// NumericalError (with the location) if the density is not finite on a node.
double rho_length(const Density& d, const Curve& curve, const QuadratureConfig& quad = {});

/// rho-length of a curve with one or both endpoints on the sphere, computed on
/// the truncations where boundary endpoints are pulled back to radius
/// 1 - 2^(-k), k = k_min..k_max. The limit is classified; value is the
/// extrapolation, or +inf when the sequence diverges or is inconclusive.
struct BoundaryLength {
    std::vector<TruncationValue> truncations;
    LimitResult limit;
    double value = 0.0;
};
BoundaryLength rho_length_to_boundary(const Density& d, const Curve& curve, int k_min = 4, int k_max = 30,
                                      const QuadratureConfig& quad = {}, const LimitPolicy& policy = {});

/// The curve with every endpoint on the sphere moved inward along its last
/// segment to the sphere of radius 1 - eps.
Curve truncate_at_radius(const Curve& curve, double eps);

}  // namespace conflab
