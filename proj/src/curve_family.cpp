#include "conflab/curve_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

int count_param(const CatalogId& id) {
    const double c = id.get("count", 512.0);
    if (!(c >= 1.0 && c <= 1e6) || c != std::floor(c)) throw ValidationError("family count must be a positive integer");
    return static_cast<int>(c);
}

int dim_param(const CatalogId& id) {
    const double n = id.get("n", 2.0);
    if (n != 2.0 && n != 3.0) throw ValidationError("family dimension must be 2 or 3");
    return static_cast<int>(n);
}

void reject_unknown(const CatalogId& id, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : id.params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ValidationError("unknown parameter '" + key + "' for family '" + id.name + "'");
    }
}

}  // namespace

std::vector<Point> sphere_directions(int dim, int count) {
    std::vector<Point> out;
    if (dim == 2) {
        for (int i = 0; i < count; ++i) out.push_back(unit_circle(2.0 * std::numbers::pi * i / count));
        return out;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        out.push_back(unit_sphere(std::acos(z), golden * i));
    }
    return out;
}

CurveFamily make_family(std::string_view text) {
    const CatalogId id = CatalogId::parse(text);
    CurveFamily fam;
    fam.descriptor = id.str();
    if (id.name == "radial") {
        reject_unknown(id, {"cap", "r", "count", "n"});
        fam.dim = dim_param(id);
        const int count = count_param(id);
        const double cap = id.get("cap", std::numbers::pi);
        const double r = id.get("r", std::exp(-1.0));
        if (!(r > 0.0 && r < 1.0)) throw ValidationError("radial family needs 0 < r < 1");
        const double total = fam.dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
        if (!(cap > 0.0 && cap <= total * (1.0 + 1e-12))) throw ValidationError("radial family cap must be in (0, sigma(S)]");
        std::vector<Point> dirs;
        if (fam.dim == 2) {
            for (int i = 0; i < count; ++i) dirs.push_back(unit_circle(-0.5 * cap + (i + 0.5) * cap / count));
        } else {
            // cap of measure `cap` around e1: cos(alpha) = 1 - cap / (2 pi); uniform in cos
            const double cmin = 1.0 - cap / (2.0 * std::numbers::pi);
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            for (int i = 0; i < count; ++i) {
                const double c = 1.0 - (1.0 - cmin) * (i + 0.5) / count;
                const Point v = unit_sphere(std::acos(c), golden * i);  // around e3
                dirs.push_back(Point(v[2], v[0], v[1]));
            }
        }
        for (const Point& u : dirs) fam.curves.push_back(Curve{{u * r, u}, true});
    } else if (id.name == "annulus") {
        reject_unknown(id, {"r1", "r2", "count", "n"});
        fam.dim = dim_param(id);
        const int count = count_param(id);
        const double r1 = id.get("r1", 0.2);
        const double r2 = id.get("r2", 0.2 * std::exp(1.0));
        if (!(r1 > 0.0 && r1 < r2 && r2 <= 1.0)) throw ValidationError("annulus family needs 0 < r1 < r2 <= 1");
        for (const Point& u : sphere_directions(fam.dim, count)) {
            // offset planar angles by half a step so no curve sits on a cell edge
            const Point v = fam.dim == 2 ? unit_circle(std::atan2(u[1], u[0]) + std::numbers::pi / count) : u;
            fam.curves.push_back(Curve{{v * r1, v * r2}, r2 >= 1.0});
        }
    } else {
        throw ValidationError("unknown curve family '" + id.name + "'");
    }
    for (const Curve& c : fam.curves) c.validate();
    return fam;
}

CurveFamily rho_radial_family(const Density& d, double r0, double L, int count, std::vector<Point>* skipped) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw ValidationError("rho_radial family needs 0 < r0 < 1");
    if (!(L > 0.0)) throw ValidationError("rho_radial family needs L > 0");
    if (count < 1) throw ValidationError("family count must be positive");
    CurveFamily fam;
    fam.dim = d.dim();
    char buf[160];
    std::snprintf(buf, sizeof buf, "rho_radial:L=%.17g,count=%d,density=%s,r0=%.17g", L, count, d.id().c_str(), r0);
    fam.descriptor = buf;
    const QuadratureConfig quad{};
    const double far = 1.0 - 1e-9;
    for (const Point& u : sphere_directions(fam.dim, count)) {
        const Point a = u * r0;
        if (segment_rho_length(d, a, u * far, quad) < L) {
            if (skipped) skipped->push_back(u);
            continue;
        }
        double lo = r0, hi = far;
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (segment_rho_length(d, a, u * mid, quad) < L)
                lo = mid;
            else
                hi = mid;
        }
        fam.curves.push_back(Curve{{a, u * hi}, false});
    }
    if (fam.curves.empty()) throw ValidationError("no direction reaches rho-length L");
    return fam;
}

CurveFamily perturbed_family(const Point& x, int count, std::uint64_t seed) {
    const double rx = x.norm();
    if (!(rx > 0.0 && rx <= 1.0 + 1e-12)) throw ValidationError("perturbed family endpoint must be nonzero and in the closed ball");
    if (count < 1) throw ValidationError("family count must be positive");
    const bool boundary = std::abs(rx - 1.0) <= 1e-12;
    const int n = x.dim;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    CurveFamily fam;
    fam.dim = n;
    fam.descriptor = "perturbed:count=" + std::to_string(count) + ",seed=" + std::to_string(seed) + ",x=" + x.str();
    const Point u = x / rx;
    for (int c = 0; c < count; ++c) {
        const int m = 2 + static_cast<int>(unif(rng) * 10.0);
        const double amp = 0.4 * unif(rng);
        std::vector<double> ts;
        for (int i = 0; i < m; ++i) ts.push_back(unif(rng));
        std::sort(ts.begin(), ts.end());
        Curve curve;
        curve.closed_ball_ok = boundary;
        curve.vertices.push_back(Point::zero(n));
        for (double t : ts) {
            if (t <= 1e-6 || t >= 1.0 - 1e-6) continue;
            Point off = Point::zero(n);
            for (int i = 0; i < n; ++i) off[i] = normal(rng);
            off = off - u * off.dot(u);
            const double on = off.norm();
            if (on > 0.0) off = off / on;
            // the bump shrinks toward both ends, and toward the sphere
            const double width = std::min(t, 1.0 - t) * rx;
            Point v = u * (t * rx) + off * (amp * width * (2.0 * unif(rng) - 1.0));
            const double rv = v.norm();
            const double cap = 1.0 - 0.5 * (1.0 - t * rx);
            if (rv > cap) v = v * (cap / rv);
            if (distance(v, curve.vertices.back()) > 1e-12) curve.vertices.push_back(v);
        }
        if (distance(x, curve.vertices.back()) <= 1e-12) curve.vertices.pop_back();
        curve.vertices.push_back(x);
        curve.validate();
        fam.curves.push_back(std::move(curve));
    }
    return fam;
}

CurveFamily spiral_family(const Point& omega, int count, std::uint64_t seed, double max_turns) {
    if (omega.dim != 2) throw ValidationError("spiral family is planar");
    if (std::abs(omega.norm() - 1.0) > 1e-12) throw ValidationError("spiral family ends on the unit circle");
    if (count < 1) throw ValidationError("family count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CurveFamily fam;
    fam.descriptor = "spiral:count=" + std::to_string(count) + ",max_turns=" + std::to_string(max_turns) +
                     ",seed=" + std::to_string(seed) + ",omega=" + omega.str();
    const double theta = std::atan2(omega[1], omega[0]);
    constexpr int kVertices = 96;
    for (int c = 0; c < count; ++c) {
        const double turns = max_turns * unif(rng);
        const double shape = 1.0 + 0.5 * unif(rng);
        Curve curve;
        curve.closed_ball_ok = true;
        curve.vertices.push_back(Point::zero(2));
        for (int i = 1; i < kVertices; ++i) {
            const double t = static_cast<double>(i) / kVertices;
            const double r = std::pow(t, shape);
            const double phi = theta + 2.0 * std::numbers::pi * turns * (1.0 - t);
            curve.vertices.push_back(unit_circle(phi) * r);
        }
        curve.vertices.push_back(unit_circle(theta));
        curve.validate();
        fam.curves.push_back(std::move(curve));
    }
    return fam;
}

}  // namespace conflab
