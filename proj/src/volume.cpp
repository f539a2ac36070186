#include <cmath>
#include <functional>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/functionals.hpp"
#include "conflab/quadrature.hpp"

namespace conflab {

std::string_view to_string(VolumeKind kind) {
    switch (kind) {
        case VolumeKind::energy: return "energy";
        case VolumeKind::interior_psi: return "interior_psi";
        case VolumeKind::radial_p: return "radial_p";
    }
    return "energy";
}

SphereRule volume_sphere_rule(const Density& d, double min_width, const VolumeQuadrature& quad) {
    if (d.dim() == 3) return SphereRule::product(quad.theta_nodes, quad.phi_nodes);
    const auto hot = d.boundary_hotspots();
    if (hot.empty()) return SphereRule::circle(quad.uniform_angles);

    // panels [0, w], [w, 2w], [2w, 4w], ... up to pi on both sides of the hotspot
    std::vector<double> edges{0.0};
    double e = min_width;
    while (e < std::numbers::pi) {
        edges.push_back(e);
        e *= 2.0;
    }
    edges.push_back(std::numbers::pi);
    const double center = std::atan2(hot.front()[1], hot.front()[0]);
    const GaussLegendre& gl = gauss_legendre(quad.angular_order);
    SphereRule rule;
    rule.dim = 2;
    for (std::size_t p = 1; p < edges.size(); ++p) {
        const double a = edges[p - 1], b = edges[p];
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[q];
            const double w = 0.5 * (b - a) * gl.weights[q];
            for (double sign : {1.0, -1.0}) {
                rule.nodes.push_back(unit_circle(center + sign * t));
                rule.weights.push_back(w);
            }
        }
    }
    return rule;
}

namespace {

// Integrates f(r, s, u) r^(n-1) over each dyadic annulus s = 1 - r in
// [2^-k, 2^(1-k)], accumulating the truncation sequence.
AnalysisReport shell_integral(const Density& d, const VolumeQuadrature& quad, const LimitPolicy& policy,
                              AnalysisReport report,
                              const std::function<double(double, double, const Point&)>& integrand) {
    if (quad.shells < 4) throw DomainError("volume functionals need at least 4 shells");
    const int n = d.dim();
    const SphereRule rule = volume_sphere_rule(d, std::ldexp(1.0, -quad.shells) / 4.0, quad);
    const GaussLegendre& gl = gauss_legendre(quad.radial_order);
    double total = 0.0;
    for (int k = 1; k <= quad.shells; ++k) {
        const double s_lo = std::ldexp(1.0, -k);
        const double s_hi = 2.0 * s_lo;
        double shell = 0.0;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double s = 0.5 * (s_lo + s_hi) + 0.5 * (s_hi - s_lo) * gl.nodes[q];
            const double r = 1.0 - s;
            double ang = 0.0;
            for (std::size_t a = 0; a < rule.size(); ++a) ang += rule.weights[a] * integrand(r, s, rule.nodes[a]);
            shell += 0.5 * (s_hi - s_lo) * gl.weights[q] * std::pow(r, n - 1) * ang;
        }
        total += shell;
        if (!std::isfinite(total))
            throw NumericalError(report.functional + " is not finite at shell " + std::to_string(k));
        report.truncations.push_back({k, total});
    }
    classify_report(report, policy);
    return report;
}

}  // namespace

AnalysisReport energy_functional(const Density& d, double p, const VolumeQuadrature& quad, const LimitPolicy& policy) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("energy exponent p must be positive");
    AnalysisReport report;
    report.functional = "energy";
    report.params = {{"density", d.id()}, {"p", p}, {"shells", quad.shells}};
    return shell_integral(d, quad, policy, std::move(report), [&](double r, double s, const Point& u) {
        return std::pow(d.at_radius(r, s, u), p) * std::pow(s, p - 1.0);
    });
}

AnalysisReport interior_psi_functional(const Density& d, const GrowthFunction& g, const VolumeQuadrature& quad,
                                       const LimitPolicy& policy) {
    AnalysisReport report;
    report.functional = "interior_psi";
    report.params = {{"density", d.id()}, {"psi", g.id()}, {"shells", quad.shells}};
    return shell_integral(d, quad, policy, std::move(report),
                          [&](double r, double s, const Point& u) { return g(d.at_radius(r, s, u) * s) / s; });
}

AnalysisReport radial_p_functional(const Density& d, double p, const VolumeQuadrature& quad, const LimitPolicy& policy) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("radial_p exponent p must be positive");
    if (quad.shells < 4) throw DomainError("volume functionals need at least 4 shells");
    AnalysisReport report;
    report.functional = "radial_p";
    report.params = {{"density", d.id()}, {"p", p}, {"shells", quad.shells}};

    const SphereRule rule = volume_sphere_rule(d, std::ldexp(1.0, -quad.shells) / 4.0, quad);
    const GaussLegendre& gl = gauss_legendre(quad.radial_order);
    std::vector<double> inner(rule.size(), 0.0);
    for (int k = 1; k <= quad.shells; ++k) {
        const double s_lo = std::ldexp(1.0, -k);
        const double s_hi = 2.0 * s_lo;
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double s = 0.5 * (s_lo + s_hi) + 0.5 * (s_hi - s_lo) * gl.nodes[q];
            const double w = 0.5 * (s_hi - s_lo) * gl.weights[q];
            for (std::size_t a = 0; a < rule.size(); ++a) inner[a] += w * d.at_radius(1.0 - s, s, rule.nodes[a]);
        }
        double total = 0.0;
        for (std::size_t a = 0; a < rule.size(); ++a) total += rule.weights[a] * std::pow(inner[a], p);
        if (!std::isfinite(total)) throw NumericalError("radial_p is not finite at shell " + std::to_string(k));
        report.truncations.push_back({k, total});
    }
    classify_report(report, policy);
    return report;
}

}  // namespace conflab
