#pragma once

#include <functional>
#include <vector>

#include "conflab/point.hpp"

namespace conflab {

/// Positive-weight quadrature on the unit sphere S^(n-1) (surface measure).
struct SphereRule {
    int dim = 2;
    std::vector<Point> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    /// n = 2: N equally spaced angles starting at 0, weights 2 pi / N.
    static SphereRule circle(int n_angles = 512);
    /// n = 3: Gauss-Legendre in cos(theta) times uniform azimuths.
    static SphereRule product(int n_theta = 48, int n_phi = 96);
    /// circle(512) or product(48, 96).
    static SphereRule standard(int dim);
};

/// Total surface measure of S^(n-1): 2 pi or 4 pi.
double sphere_area(int dim);

/// sum_i w_i g(omega_i). NumericalError naming the node on a non-finite sample.
double sphere_integral(const SphereRule& rule, const std::function<double(const Point&)>& g);

}  // namespace conflab
