#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/modulus.hpp"
#include "conflab/quadrature.hpp"
#include "conflab/sphere_rule.hpp"

namespace conflab {

namespace {

// Unit vectors v, w completing u to an orthonormal frame of R^3.
std::pair<Point, Point> frame(const Point& u) {
    const Point a = std::abs(u[0]) < 0.9 ? Point(1.0, 0.0, 0.0) : Point(0.0, 1.0, 0.0);
    Point v = a - u * a.dot(u);
    v = v / v.norm();
    const Point w(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]);
    return {v, w};
}

double curve_rho_length(const Density& d, const Curve& c) {
    if (c.ends_on_sphere() || c.starts_on_sphere())
        return rho_length_to_boundary(d, c, 2, 30, QuadratureConfig{}, LimitPolicy{}).value;
    return rho_length(d, c, QuadratureConfig{});
}

}  // namespace

SeparationReport separation_bound_check(const Density& d, const std::vector<Point>& E, double delta, double L,
                                        const CurveFamily& family, const SolverConfig& solver) {
    if (!(delta > 0.0)) throw DomainError("separation check needs delta > 0");
    if (!(L >= delta)) throw PreconditionError("separation check needs L >= delta");
    if (E.empty()) throw PreconditionError("the set E is empty");
    if (family.curves.empty()) throw ValidationError("curve family is empty");
    SeparationReport out;
    out.delta = delta;
    out.L = L;
    // Straight segments bound the rho-distance from above, so a diameter
    // bound below delta certifies diam_rho(E) <= delta.
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = i + 1; j < E.size(); ++j)
            out.diameter_bound = std::max(out.diameter_bound, segment_rho_length(d, E[i], E[j], QuadratureConfig{}));
    if (out.diameter_bound > delta)
        throw PreconditionError("rho-diameter bound " + std::to_string(out.diameter_bound) + " of E exceeds delta");
    out.min_curve_length = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < family.curves.size(); ++g) {
        const Curve& c = family.curves[g];
        c.validate();
        const bool starts = std::any_of(E.begin(), E.end(), [&](const Point& e) { return distance(e, c.vertices.front()) <= 1e-12; });
        if (!starts) throw PreconditionError("curve " + std::to_string(g) + " does not start in E");
        const double len = curve_rho_length(d, c);
        if (len < L * (1.0 - 1e-9))
            throw PreconditionError("curve " + std::to_string(g) + " has rho-length " + std::to_string(len) +
                                    " < L");
        out.min_curve_length = std::min(out.min_curve_length, len);
    }
    out.modulus = numerical_modulus(family, solver);
    out.ratio = out.modulus.upper * std::pow(std::log1p(L / delta), family.dim - 1);
    return out;
}

CapMeasureReport cap_measure_test(const GeodesicField& field, double M, int samples) {
    if (!(M > 1.0)) throw DomainError("cap measure test needs M > 1");
    if (samples < 1) throw DomainError("cap measure test needs at least one sample");
    const int n = field.dim();
    CapMeasureReport out;
    out.x = field.source();
    out.M = M;
    const double r = out.x.norm();
    const double s = (1.0 - r) / (2.0 * r);
    out.half_angle = r > 0.0 && s < 1.0 ? std::asin(s) : std::numbers::pi;
    out.sigma_sx = n == 2 ? 2.0 * out.half_angle : 2.0 * std::numbers::pi * (1.0 - std::cos(out.half_angle));
    out.threshold = M * field.density()(out.x) * (1.0 - r);
    out.samples = static_cast<std::size_t>(samples);
    out.bound_unit = out.sigma_sx * std::pow(std::log(M), 1 - n);

    const Point u = r > 0.0 ? out.x / r : Point::e1(n);
    std::vector<Point> omegas;
    if (n == 2) {
        const double base = std::atan2(u[1], u[0]);
        for (int i = 0; i < samples; ++i)
            omegas.push_back(unit_circle(base - out.half_angle + (i + 0.5) * 2.0 * out.half_angle / samples));
    } else {
        // uniform in cos(angle) over the cap, golden-angle azimuths
        const auto [v, w] = frame(u);
        const double cmin = std::cos(out.half_angle);
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < samples; ++i) {
            const double c = 1.0 - (1.0 - cmin) * (i + 0.5) / samples;
            const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
            omegas.push_back(u * c + v * (sn * std::cos(golden * i)) + w * (sn * std::sin(golden * i)));
        }
    }

    // Only shells outside the source carry the boundary behaviour.
    const Resolution& res = field.grid().resolution();
    const int k_min = r > 0.0 ? std::max(res.k0, static_cast<int>(std::ceil(-std::log2(1.0 - r))) + 1) : res.k0;
    for (const Point& omega : omegas) {
        std::vector<TruncationValue> tv;
        for (const TruncationValue& t : field.boundary_truncations(omega))
            if (t.k >= k_min) tv.push_back(t);
        double value = 0.0;
        bool unsure = false;
        try {
            const LimitResult lim = classify_limit(tv);
            if (lim.verdict == Verdict::convergent) value = *lim.extrapolated;
            else if (lim.verdict == Verdict::divergent) value = std::numeric_limits<double>::infinity();
            else unsure = true;
        } catch (const DataError&) {
            unsure = true;
        }
        if (unsure) {
            ++out.inconclusive;
            ++out.exceptional;
        } else if (value > out.threshold) {
            ++out.exceptional;
        }
    }
    out.measure = out.sigma_sx * static_cast<double>(out.exceptional) / samples;
    out.ratio = out.measure / out.bound_unit;
    return out;
}

double DiscreteMeasure::total() const {
    double s = 0.0;
    for (const auto& [p, w] : atoms) s += w;
    return s;
}

DiscreteMeasure DiscreteMeasure::dyadic_radial(int dim, int K) {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
    DiscreteMeasure mu;
    mu.dim = dim;
    for (int k = 1; k <= K; ++k) {
        const double s = std::ldexp(1.0, -k);
        mu.atoms.push_back({Point::e1(dim) * (1.0 - s), std::pow(s, dim - 1)});
    }
    return mu;
}

DiscreteMeasure DiscreteMeasure::uniform_volume(int dim, int radial, int angular) {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
    if (radial < 1 || radial > 64 || angular < 1) throw DomainError("quadrature sizes out of range");
    DiscreteMeasure mu;
    mu.dim = dim;
    const GaussLegendre& gl = gauss_legendre(radial);
    const double dsigma = sphere_area(dim) / angular;
    std::vector<Point> dirs;
    if (dim == 2) {
        for (int j = 0; j < angular; ++j) dirs.push_back(unit_circle(2.0 * std::numbers::pi * (j + 0.5) / angular));
    } else {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int j = 0; j < angular; ++j)
            dirs.push_back(unit_sphere(std::acos(1.0 - (2.0 * j + 1.0) / angular), golden * j));
    }
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double r = 0.5 * (gl.nodes[i] + 1.0);
        const double w = 0.5 * gl.weights[i] * std::pow(r, dim - 1) * dsigma;
        for (const Point& u : dirs) mu.atoms.push_back({u * r, w});
    }
    return mu;
}

CarlesonProbe CarlesonProbe::standard(int dim, int centers, int levels, int subdivisions) {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
    if (centers < 1 || levels < 0 || subdivisions < 1) throw DomainError("probe sizes out of range");
    CarlesonProbe p;
    if (dim == 2) {
        for (int i = 0; i < centers; ++i) p.centers.push_back(unit_circle(2.0 * std::numbers::pi * i / centers));
    } else {
        // e1 first, then a golden spiral
        p.centers.push_back(Point::e1(3));
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 1; i < centers; ++i)
            p.centers.push_back(unit_sphere(std::acos(1.0 - (2.0 * i + 1.0) / centers), golden * i));
    }
    for (int j = 0; j <= levels * subdivisions; ++j)
        p.radii.push_back(2.0 * std::exp2(-static_cast<double>(j) / subdivisions));
    return p;
}

CarlesonReport carleson_constant(const DiscreteMeasure& mu, const CarlesonProbe& probe) {
    if (probe.centers.empty() || (probe.radii.empty() && !probe.atom_radii))
        throw DomainError("Carleson probe set is empty");
    for (double r : probe.radii)
        if (!(r > 0.0 && r <= 2.0)) throw DomainError("Carleson probe radii must lie in (0, 2]");
    for (const auto& [p, w] : mu.atoms) {
        if (p.dim != mu.dim) throw ValidationError("measure atom has the wrong dimension");
        if (p.norm() > 1.0 + 1e-12) throw ValidationError("measure atom " + p.str() + " lies outside the closed ball");
        if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("measure weights must be finite and nonnegative");
    }
    const int n = mu.dim;
    CarlesonReport out;
    out.worst_center = probe.centers.front();
    std::vector<std::pair<double, double>> ds(mu.atoms.size());
    std::vector<double> cum(mu.atoms.size());
    for (const Point& c : probe.centers) {
        for (std::size_t i = 0; i < mu.atoms.size(); ++i) ds[i] = {distance(c, mu.atoms[i].first), mu.atoms[i].second};
        std::sort(ds.begin(), ds.end());
        double acc = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i) cum[i] = acc += ds[i].second;
        // mass of the open ball B(c, r)
        auto mass = [&](double r) {
            const auto it = std::lower_bound(ds.begin(), ds.end(), std::pair{r, -1.0});
            const auto m = static_cast<std::size_t>(it - ds.begin());
            return m == 0 ? 0.0 : cum[m - 1];
        };
        auto probe_at = [&](double r) {
            ++out.probes;
            const double a = mass(r) / std::pow(r, n - 1);
            if (a > out.alpha) {
                out.alpha = a;
                out.worst_center = c;
                out.worst_radius = r;
            }
        };
        for (double r : probe.radii) probe_at(r);
        if (probe.atom_radii)
            for (std::size_t i = 0; i < ds.size(); ++i) {
                if (i + 1 < ds.size() && ds[i + 1].first == ds[i].first) continue;
                const double r = std::nextafter(ds[i].first, 3.0);
                if (r > 0.0 && r <= 2.0) probe_at(r);
            }
    }
    return out;
}

}  // namespace conflab
