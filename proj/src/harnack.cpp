#include "conflab/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conflab/errors.hpp"

namespace conflab {

std::vector<Point> star_directions_3d() {
    std::vector<Point> out;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z)
                if (x != 0 || y != 0 || z != 0) out.push_back(Point(x, y, z).normalized());
    return out;
}

HarnackPlan HarnackPlan::standard(int n, int levels, int angles) {
    HarnackPlan plan;
    std::vector<Point> dirs;
    if (n == 2) {
        for (int i = 0; i < angles; ++i) dirs.push_back(unit_circle(2.0 * std::numbers::pi * i / angles));
    } else {
        dirs = star_directions_3d();
    }
    plan.centers.push_back(Point::zero(n));
    for (int j = 1; j <= levels; ++j) {
        const double r = 1.0 - std::ldexp(1.0, -j);
        for (const Point& u : dirs) plan.centers.push_back(u * r);
    }
    if (n == 2) {
        for (int i = 0; i < 8; ++i) plan.directions.push_back(unit_circle(std::numbers::pi * i / 4.0));
    } else {
        plan.directions = star_directions_3d();
    }
    plan.fractions = {0.5, 0.99};
    return plan;
}

HarnackReport check_hi(const Density& d, const HarnackPlan& plan) {
    HarnackReport report;
    report.claimed_a = d.claimed_a();
    for (const Point& z : plan.centers) {
        const double rz = z.norm();
        if (!(rz < 1.0)) throw DomainError("Whitney center " + z.str() + " touches the boundary");
        const double radius = 0.5 * (1.0 - rz);
        double lo = d(z), hi = lo;
        for (const Point& u : plan.directions) {
            for (double f : plan.fractions) {
                if (!(f > 0.0 && f < 1.0)) throw DomainError("Whitney offset fractions must lie in (0, 1)");
                const double v = d(z + u * (f * radius));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        ++report.balls;
        const double ratio = hi / lo;
        if (ratio > report.a_emp) {
            report.a_emp = ratio;
            report.worst_center = z;
        }
    }
    report.pass = !report.claimed_a || report.a_emp <= *report.claimed_a;
    return report;
}

}  // namespace conflab
