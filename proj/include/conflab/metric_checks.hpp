#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conflab/curve_family.hpp"
#include "conflab/density.hpp"
#include "conflab/geodesic.hpp"

namespace conflab {

struct VgSample {
    Point x;
    double r = 0.0;
};

struct VgPair {
    Point x;
    double r = 0.0;
    double mu = 0.0;        ///< mu_rho of the discrete rho-ball
    double b = 0.0;         ///< mu / r^n
    bool lower_bound_only = false;  ///< the ball reached the outermost shell
};

struct VgReport {
    std::vector<VgPair> pairs;
    double b_emp = 0.0;
    std::optional<double> claimed;
    std::optional<bool> pass;  ///< b_emp <= claimed * (1 + tolerance), when a claim exists
    double tolerance = 0.02;
    std::vector<std::string> warnings;
};

/// Samples (x, t) scaled to the density: r = t rho(x) (1 - |x|), which is about
/// t Whitney radii in the rho metric.
std::vector<VgSample> whitney_vg_samples(const Density& d, const std::vector<Point>& centers,
                                         const std::vector<double>& scales);

/// mu_rho(B_rho(x, r)) / r^n from fields re-sourced at each x. Node cells are
/// counted with a linear ramp of one cell across the sphere dist = r.
VgReport check_vg(const Density& d, const std::vector<VgSample>& samples, const Resolution& res,
                  double tolerance = 0.02);

struct GhReport {
    Point x;
    bool boundary = false;
    double radial = 0.0;        ///< rho-length of [0, x] (truncated for boundary x)
    double best = 0.0;          ///< shortest candidate
    std::size_t best_index = 0;
    double ratio = 0.0;         ///< radial / best
    std::size_t candidates = 0;
};

/// Truncation level used for boundary endpoints: curves are cut at radius 1 - 2^-k.
inline constexpr int kGhBoundaryLevel = 20;

/// Gehring-Hayman witness: rho-length of the radial segment over the shortest
/// candidate joining 0 and x. ValidationError for a candidate with other
/// endpoints.
GhReport gh_ratio(const Density& d, const Point& x, const CurveFamily& candidates);

}  // namespace conflab
