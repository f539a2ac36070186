#pragma once

#include <optional>
#include <vector>

#include "conflab/density.hpp"
#include "conflab/point.hpp"

namespace conflab {

/// Whitney-ball sampling plan for the Harnack check. Each center z carries the
/// ball B_z = B(z, (1 - |z|)/2); the sample points of B_z are z itself and
/// z + fraction * (1 - |z|)/2 * u for every offset direction u and fraction.
struct HarnackPlan {
    std::vector<Point> centers;
    std::vector<Point> directions;   ///< unit offset directions
    std::vector<double> fractions;   ///< in (0, 1)

    /// Centers on radii 1 - 2^(-j), j = 0..levels, along `angles` directions
    /// (n = 2) or a 26-direction star (n = 3).
    static HarnackPlan standard(int n, int levels = 14, int angles = 24);
};

struct HarnackReport {
    double a_emp = 1.0;     ///< max ratio rho(x)/rho(y) within one Whitney ball
    Point worst_center;
    std::optional<double> claimed_a;
    bool pass = true;       ///< a_emp <= claimed_a (true when nothing is claimed)
    std::size_t balls = 0;
};

/// DomainError when a center or sample point is not interior.
HarnackReport check_hi(const Density& d, const HarnackPlan& plan);

/// Unit directions used by the 3-d plans: 6 axes, 12 edge and 8 corner diagonals.
std::vector<Point> star_directions_3d();

}  // namespace conflab
