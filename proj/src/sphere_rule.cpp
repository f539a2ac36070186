#include "conflab/sphere_rule.hpp"

#include <cmath>
#include <numbers>

#include "conflab/errors.hpp"
#include "conflab/quadrature.hpp"

namespace conflab {

double sphere_area(int dim) {
    if (dim == 2) return 2.0 * std::numbers::pi;
    if (dim == 3) return 4.0 * std::numbers::pi;
    throw ValidationError("dimension must be 2 or 3");
}

SphereRule SphereRule::circle(int n_angles) {
    if (n_angles < 1) throw DomainError("circle rule needs at least one node");
    SphereRule rule;
    rule.dim = 2;
    for (int i = 0; i < n_angles; ++i) {
        rule.nodes.push_back(unit_circle(2.0 * std::numbers::pi * i / n_angles));
        rule.weights.push_back(2.0 * std::numbers::pi / n_angles);
    }
    return rule;
}

SphereRule SphereRule::product(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw DomainError("product rule needs positive sizes");
    const GaussLegendre& gl = gauss_legendre(n_theta);
    SphereRule rule;
    rule.dim = 3;
    for (int i = 0; i < n_theta; ++i) {
        const double z = gl.nodes[static_cast<std::size_t>(i)];
        const double theta = std::acos(z);
        const double w = gl.weights[static_cast<std::size_t>(i)] * 2.0 * std::numbers::pi / n_phi;
        for (int j = 0; j < n_phi; ++j) {
            rule.nodes.push_back(unit_sphere(theta, 2.0 * std::numbers::pi * j / n_phi));
            rule.weights.push_back(w);
        }
    }
    return rule;
}

SphereRule SphereRule::standard(int dim) {
    if (dim == 2) return circle(512);
    if (dim == 3) return product(48, 96);
    throw ValidationError("dimension must be 2 or 3");
}

double sphere_integral(const SphereRule& rule, const std::function<double(const Point&)>& g) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = g(rule.nodes[i]);
        if (!std::isfinite(v))
            throw NumericalError("integrand is not finite at sphere node " + std::to_string(i) + " " +
                                 rule.nodes[i].str());
        total += rule.weights[i] * v;
    }
    return total;
}

}  // namespace conflab
