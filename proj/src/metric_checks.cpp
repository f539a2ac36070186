#include "conflab/metric_checks.hpp"

#include <algorithm>
#include <cmath>

#include "conflab/errors.hpp"

namespace conflab {

std::vector<VgSample> whitney_vg_samples(const Density& d, const std::vector<Point>& centers,
                                         const std::vector<double>& scales) {
    std::vector<VgSample> out;
    for (const Point& x : centers) {
        const double unit = d(x) * (1.0 - x.norm());
        for (double t : scales) {
            if (!(t > 0.0)) throw DomainError("VG scales must be positive");
            out.push_back({x, t * unit});
        }
    }
    return out;
}

VgReport check_vg(const Density& d, const std::vector<VgSample>& samples, const Resolution& res, double tolerance) {
    if (samples.empty()) throw DomainError("VG check needs at least one sample");
    VgReport out;
    out.tolerance = tolerance;
    out.claimed = d.claimed_b();
    const auto graph = MetricGraph::shared(d, res);
    const ShellGrid& g = graph->grid();
    const int n = g.dim();
    const int outer = g.shell_count() - 1;

    // rho^n dx per node does not depend on the source
    std::vector<double> mass(g.size()), ramp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point& p = g.node(i);
        const double rho = d(p);
        mass[i] = std::pow(rho, n) * g.cell_volume(i);
        ramp[i] = rho * g.shell_step(g.shell_of(i));
    }

    for (const VgSample& s : samples) {
        if (!(s.r > 0.0)) throw DomainError("VG radius must be positive");
        if (!(s.x.norm() < 1.0)) throw DomainError("VG center " + s.x.str() + " is not interior");
        const GeodesicField f(graph, s.x);
        VgPair pair{s.x, s.r, 0.0, 0.0, false};
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double dist = f.node_distance(i);
            const double incl = std::clamp((s.r - dist) / ramp[i] + 0.5, 0.0, 1.0);
            if (incl == 0.0) continue;
            pair.mu += incl * mass[i];
            if (g.shell_of(i) == outer) pair.lower_bound_only = true;
        }
        pair.b = pair.mu / std::pow(s.r, n);
        if (pair.lower_bound_only)
            out.warnings.push_back("rho-ball around " + s.x.str() + " of radius " + std::to_string(s.r) +
                                   " reaches the outermost shell; its value is a lower bound");
        out.b_emp = std::max(out.b_emp, pair.b);
        out.pairs.push_back(pair);
    }
    if (out.claimed) out.pass = out.b_emp <= *out.claimed * (1.0 + tolerance);
    return out;
}

namespace {

double length_to(const Density& d, const Curve& c, bool boundary) {
    if (!boundary) return rho_length(d, c, QuadratureConfig{});
    return rho_length(d, truncate_at_radius(c, std::ldexp(1.0, -kGhBoundaryLevel)), QuadratureConfig{});
}

}  // namespace

GhReport gh_ratio(const Density& d, const Point& x, const CurveFamily& candidates) {
    if (x.dim != d.dim()) throw ValidationError("endpoint dimension differs from the density");
    const double r = x.norm();
    if (!(r > 0.0) || r > 1.0 + 1e-12) throw DomainError("gh endpoint must lie in the closed ball minus the origin");
    if (candidates.curves.empty()) throw ValidationError("no candidate curves");
    GhReport out;
    out.x = x;
    out.boundary = std::abs(r - 1.0) <= 1e-12;
    out.radial = length_to(d, Curve{{Point::zero(x.dim), x}, out.boundary}, out.boundary);
    out.best = out.radial;
    out.best_index = candidates.curves.size();  // the radial segment itself
    for (std::size_t i = 0; i < candidates.curves.size(); ++i) {
        const Curve& c = candidates.curves[i];
        if (c.vertices.size() < 2 || distance(c.vertices.front(), Point::zero(x.dim)) > 1e-12 ||
            distance(c.vertices.back(), x) > 1e-12)
            throw ValidationError("candidate " + std::to_string(i) + " does not join 0 and " + x.str());
        const double len = length_to(d, c, out.boundary);
        if (len < out.best) {
            out.best = len;
            out.best_index = i;
        }
    }
    out.candidates = candidates.curves.size();
    out.ratio = out.radial / out.best;
    return out;
}

}  // namespace conflab
