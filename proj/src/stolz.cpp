#include "conflab/stolz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/harnack.hpp"

namespace conflab {

std::vector<Point> star_directions(int dim) {
    if (dim == 3) return star_directions_3d();
    std::vector<Point> out;
    for (int i = 0; i < 8; ++i) out.push_back(unit_circle(std::numbers::pi * i / 4.0));
    return out;
}

double stolz_half_angle(double r) {
    if (r < 0.5) return std::numbers::pi;
    if (r >= 1.0) return 0.0;
    // 2 r sin(phi + pi/6) = 1 on the tangent lines through omega
    return std::asin(0.5 / r) - std::numbers::pi / 6.0;
}

bool in_stolz_cone(const Point& omega, const Point& x) {
    const double r2 = x.norm2();
    if (r2 < 0.25) return true;
    const double a = x.dot(omega);
    if (a < 0.25) return false;
    const double b2 = std::max(r2 - a * a, 0.0);
    const double rhs = 1.0 - a;
    return rhs > 0.0 && 3.0 * b2 < rhs * rhs;
}

StolzCone::StolzCone(const Point& omega, double r_limit) {
    const double m = omega.norm();
    if (std::abs(m - 1.0) > 1e-9) throw DomainError("cone apex " + omega.str() + " is not on the unit sphere");
    if (!(r_limit > 0.0 && r_limit < 1.0)) throw DomainError("cone sample radius must lie in (0, 1)");
    omega_ = omega / m;
    const std::vector<Point> dirs = star_directions(omega.dim);
    for (int j = 0;; ++j) {
        const double tj = 1.0 - std::pow(2.0, -0.5 * j);
        if (tj > r_limit) break;
        const Point c = omega_ * tj;
        sample_.push_back(c);
        const double w = 0.5 * (1.0 - tj);
        for (const Point& u : dirs) {
            for (double f : {0.3, 0.6, 0.9}) {
                const Point x = c + u * (f * w);
                if (x.norm() <= r_limit) sample_.push_back(x);
            }
        }
    }
    if (sample_.empty()) throw DomainError("empty cone sample");
}

bool StolzCone::contains(const Point& x) const { return in_stolz_cone(omega_, x); }

double nontangential_max(const GeodesicField& f, const StolzCone& cone) {
    if (cone.sample().empty()) throw DomainError("empty cone sample");
    if (cone.omega().dim != f.dim()) throw ValidationError("cone and field dimensions differ");
    double best = 0.0;
    for (const Point& x : cone.sample()) best = std::max(best, f.distance(x));
    return best;
}

double cone_sup(const Density& d, const StolzCone& cone) {
    if (cone.sample().empty()) throw DomainError("empty cone sample");
    double best = 0.0;
    for (const Point& x : cone.sample()) {
        const double r = x.norm();
        const Point u = r > 0.0 ? x / r : Point::e1(x.dim);
        best = std::max(best, d.at_radius(r, 1.0 - r, u) * (1.0 - r));
    }
    return best;
}

}  // namespace conflab
