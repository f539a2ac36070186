#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

namespace conflab {

/// A point of R^n for n in {2, 3}. Unused trailing coordinates stay zero so
/// that arithmetic is dimension agnostic.
struct Point {
    int dim = 2;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Point() = default;
    Point(double x, double y) : dim(2), c{x, y, 0.0} {}
    Point(double x, double y, double z) : dim(3), c{x, y, z} {}

    static Point zero(int n) {
        Point p;
        p.dim = n;
        return p;
    }

    /// Unit vector along the first axis.
    static Point e1(int n) {
        Point p = zero(n);
        p.c[0] = 1.0;
        return p;
    }

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    double norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
    double norm() const { return std::sqrt(norm2()); }

    Point operator+(const Point& o) const { return {dim, c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}; }
    Point operator-(const Point& o) const { return {dim, c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}; }
    Point operator*(double a) const { return {dim, c[0] * a, c[1] * a, c[2] * a}; }
    Point operator/(double a) const { return {dim, c[0] / a, c[1] / a, c[2] / a}; }

    double dot(const Point& o) const { return c[0] * o.c[0] + c[1] * o.c[1] + c[2] * o.c[2]; }

    Point normalized() const { return *this / norm(); }

    std::string str() const {
        char buf[96];
        if (dim == 3)
            std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", c[0], c[1], c[2]);
        else
            std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", c[0], c[1]);
        return buf;
    }

private:
    Point(int n, double x, double y, double z) : dim(n), c{x, y, z} {}
};

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// Point on the unit circle at angle theta (n = 2).
inline Point unit_circle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Point on the unit sphere with polar angle theta and azimuth phi (n = 3).
inline Point unit_sphere(double theta, double phi) {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

/// Angle between two nonzero vectors, accurate for nearly parallel inputs.
inline double angle_between(const Point& a, const Point& b) {
    const Point ua = a.normalized();
    const Point ub = b.normalized();
    const double s = (ua - ub).norm();
    const double t = (ua + ub).norm();
    return 2.0 * std::atan2(s, t);
}

}  // namespace conflab
