#include "conflab/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

constexpr double kBoundaryTol = 1e-12;

GaussLegendre build_gauss_legendre(int n) {
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

bool on_sphere(const Point& p) { return std::abs(p.norm() - 1.0) <= kBoundaryTol; }

// Largest t in (0, 1] with |a + t (b - a)| = radius, assuming |a| <= radius < |b|.
Point crossing(const Point& a, const Point& b, double radius) {
    const Point d = b - a;
    const double qa = d.norm2();
    const double qb = 2.0 * a.dot(d);
    const double qc = a.norm2() - radius * radius;
    const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
    const double t = (-qb + std::sqrt(disc)) / (2.0 * qa);
    return a + d * std::clamp(t, 0.0, 1.0);
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1 || n > 64) throw DomainError("Gauss-Legendre order must be in [1, 64]");
    static std::array<std::unique_ptr<GaussLegendre>, 65> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (!slot) slot = std::make_unique<GaussLegendre>(build_gauss_legendre(n));
    return *slot;
}

void Curve::validate() const {
    if (vertices.size() < 2) throw ValidationError("curve needs at least 2 vertices");
    const int n = vertices.front().dim;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Point& v = vertices[i];
        if (v.dim != n) throw ValidationError("curve vertices have mixed dimensions");
        const double r = v.norm();
        const bool endpoint = i == 0 || i + 1 == vertices.size();
        if (!std::isfinite(r)) throw ValidationError("curve vertex " + std::to_string(i) + " is not finite");
        if (endpoint && closed_ball_ok) {
            if (r > 1.0 + kBoundaryTol)
                throw ValidationError("curve endpoint " + v.str() + " lies outside the closed ball");
        } else if (!(r < 1.0)) {
            throw ValidationError("curve vertex " + std::to_string(i) + " " + v.str() + " is not interior");
        }
        if (i > 0 && distance(vertices[i - 1], v) == 0.0)
            throw ValidationError("curve has repeated consecutive vertex at index " + std::to_string(i));
    }
}

bool Curve::starts_on_sphere() const { return !vertices.empty() && on_sphere(vertices.front()); }
bool Curve::ends_on_sphere() const { return !vertices.empty() && on_sphere(vertices.back()); }

double Curve::euclidean_length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) total += distance(vertices[i - 1], vertices[i]);
    return total;
}

double segment_rho_length(const Density& d, const Point& a, const Point& b, const QuadratureConfig& quad) {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    const Point u = (b - a) / len;
    const GaussLegendre& gl = gauss_legendre(quad.gl_order);
    const double f = quad.step_fraction;

    double total = 0.0;
    double s = 0.0;
    while (s < len) {
        const Point p = a + u * s;
        const double w = 1.0 - p.norm();
        if (!(w > 0.0)) throw DomainError("segment leaves the open ball at " + p.str());
        // w is 1-Lipschitz, so h <= f (w - h) keeps the panel below f times
        // the distance to the sphere anywhere on it.
        double h = std::min(len - s, f * w / (1.0 + f));
        if (len - s - h < 1e-3 * h) h = len - s;
        const double mid = s + 0.5 * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const Point x = a + u * (mid + 0.5 * h * gl.nodes[i]);
            panel += gl.weights[i] * d(x);
        }
        total += 0.5 * h * panel;
        s += h;
    }
    return total;
}

double rho_length(const Density& d, const Curve& curve, const QuadratureConfig& quad) {
    curve.validate();
    double total = 0.0;
    for (std::size_t i = 1; i < curve.vertices.size(); ++i)
        total += segment_rho_length(d, curve.vertices[i - 1], curve.vertices[i], quad);
    return total;
}

Curve truncate_at_radius(const Curve& curve, double eps) {
    const double radius = 1.0 - eps;
    Curve out;
    out.vertices = curve.vertices;
    out.closed_ball_ok = false;

    if (curve.ends_on_sphere()) {
        auto& v = out.vertices;
        std::size_t j = v.size() - 1;
        while (j > 0 && v[j - 1].norm() > radius) --j;
        if (j == 0) throw ValidationError("curve lies entirely outside radius " + std::to_string(radius));
        v[j] = crossing(v[j - 1], v[j], radius);
        v.resize(j + 1);
    }
    if (curve.starts_on_sphere()) {
        auto& v = out.vertices;
        std::size_t j = 0;
        while (j + 1 < v.size() && v[j + 1].norm() > radius) ++j;
        if (j + 1 == v.size()) throw ValidationError("curve lies entirely outside radius " + std::to_string(radius));
        v[j] = crossing(v[j + 1], v[j], radius);
        v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return out;
}

BoundaryLength rho_length_to_boundary(const Density& d, const Curve& curve, int k_min, int k_max,
                                      const QuadratureConfig& quad, const LimitPolicy& policy) {
    curve.validate();
    BoundaryLength out;
    if (!curve.starts_on_sphere() && !curve.ends_on_sphere()) {
        out.value = rho_length(d, curve, quad);
        out.limit.verdict = Verdict::convergent;
        out.limit.extrapolated = out.value;
        return out;
    }
    if (k_max - k_min + 1 < 4) throw DomainError("boundary length needs at least 4 truncation levels");
    for (int k = k_min; k <= k_max; ++k) {
        const Curve cut = truncate_at_radius(curve, std::ldexp(1.0, -k));
        out.truncations.push_back({k, rho_length(d, cut, quad)});
    }
    out.limit = classify_limit(out.truncations, policy);
    out.value = out.limit.verdict == Verdict::convergent ? *out.limit.extrapolated
                                                          : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace conflab
