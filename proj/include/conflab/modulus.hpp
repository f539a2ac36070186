#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conflab/curve_family.hpp"
#include "conflab/density.hpp"
#include "conflab/geodesic.hpp"
#include "conflab/shell_grid.hpp"

namespace conflab {

/// sigma(E) (log 1/r)^(1-n). DomainError unless 0 < r < 1 and
/// 0 < sigma(E) <= sigma(S^(n-1)).
double radial_modulus_oracle(double sigma_e, double r, int n);

/// Polar cells covering r_inner <= |x| <= 1: radial edges in geometric
/// progression (ratio e^h), and equal angular cells (n = 2) or latitude bands
/// times equal azimuths (n = 3).
class PolarCells {
public:
    /// For n = 3 the polar axis is e1 and, when theta_max < pi, a band edge is
    /// placed at polar angle theta_max so that a cap family fills whole bands.
    PolarCells(int dim, double r_inner, double h, int angular_cells, double theta_max = 0.0);

    int dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(radial_bins()) * directions_; }
    int radial_bins() const { return static_cast<int>(edges_.size()) - 1; }
    const std::vector<double>& radial_edges() const { return edges_; }
    int angular_cells() const { return static_cast<int>(directions_); }
    double volume(std::size_t c) const;
    /// Cell containing x, or -1 when |x| < r_inner.
    long locate(const Point& x) const;
    /// Angular cell size (radians).
    double angular_step() const { return dtheta_; }

private:
    int dim_;
    std::vector<double> edges_;
    std::size_t directions_ = 0;
    int bands_ = 0;        // n = 3
    int azimuths_ = 0;     // n = 3, per band
    double dtheta_ = 0.0;
};

struct SolverConfig {
    int iterations = 2000;     ///< subgradient iterations (and dual iterations)
    double step = 0.5;         ///< c in the c / sqrt(k) step rule
    int rescale_every = 50;    ///< feasibility rescale period
    bool dual = true;          ///< also run projected gradient on the dual
    double h = 0.0;            ///< radial log-step of the cells; 0 means from the preset
    int angular_cells = 0;     ///< 0 means from the preset
    double gap_tol = 0.01;     ///< relative gap under which the run counts as converged
};

/// Solver settings derived from a resolution preset (cells of size h).
SolverConfig solver_for(const Resolution& res, int dim);

struct ModulusResult {
    double upper = 0.0;          ///< sum vol_c rho_c^n of the rescaled certificate
    double lower = 0.0;          ///< dual objective (a lower bound for the discrete program)
    double primal_upper = 0.0;   ///< best certificate found by the subgradient method
    std::vector<double> certificate;  ///< rho per cell, every curve has discrete length >= 1
    double min_curve_length = 0.0;    ///< min over curves of the certificate length
    std::size_t curves = 0;
    std::size_t cells = 0;
    std::size_t touched_cells = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> warnings;
};

/// Discrete modulus of the family: minimize sum_c vol_c rho_c^n subject to
/// sum_c len(gamma in c) rho_c >= 1 for every curve. ValidationError when a
/// curve has no length inside the cells.
ModulusResult numerical_modulus(const CurveFamily& family, const SolverConfig& solver);

/// Lemma-type bound mod <= C / log(1 + L/delta)^(n-1).
struct SeparationReport {
    double delta = 0.0;
    double L = 0.0;
    double diameter_bound = 0.0;  ///< max straight-segment rho-length between points of E
    double min_curve_length = 0.0;
    ModulusResult modulus;
    double ratio = 0.0;           ///< modulus * log(1 + L/delta)^(n-1)
};

/// PreconditionError if L < delta, the rho-diameter of E (bounded above by
/// segment lengths) exceeds delta, a curve does not start in E, or a curve is
/// shorter than L in the rho metric.
SeparationReport separation_bound_check(const Density& d, const std::vector<Point>& E, double delta, double L,
                                        const CurveFamily& family, const SolverConfig& solver);

struct CapMeasureReport {
    Point x;
    double M = 0.0;
    double threshold = 0.0;       ///< M rho(x) (1 - |x|)
    double half_angle = 0.0;      ///< of S_x
    double sigma_sx = 0.0;
    std::size_t samples = 0;
    std::size_t exceptional = 0;  ///< boundary samples with d_rho(omega, x) > threshold
    std::size_t inconclusive = 0; ///< counted as exceptional
    double measure = 0.0;         ///< sigma(S_x) * exceptional / samples
    double bound_unit = 0.0;      ///< sigma(S_x) (log M)^(1-n)
    double ratio = 0.0;           ///< measure / bound_unit
};

/// Exceptional set {omega in S_x : d_rho(omega, x) > M rho(x)(1-|x|)} measured
/// by `samples` boundary points spread evenly over the cap S_x, whose
/// half-angle is asin((1-|x|)/(2|x|)). field must be sourced at x.
/// DomainError for M <= 1 or x = 0 with a nonzero radius requirement.
CapMeasureReport cap_measure_test(const GeodesicField& field, double M, int samples = 256);

/// Atoms (point, weight) in the closed ball.
struct DiscreteMeasure {
    int dim = 2;
    std::vector<std::pair<Point, double>> atoms;

    double total() const;
    /// x_k = (1 - 2^-k) e1 with weights (1 - |x_k|)^(n-1), k = 1..K.
    static DiscreteMeasure dyadic_radial(int dim, int K = 40);
    /// Polar product quadrature of Lebesgue measure on the ball.
    static DiscreteMeasure uniform_volume(int dim, int radial = 64, int angular = 256);
};

/// Probe set for the Carleson constant: ball centers on the sphere and radii
/// 2 * 2^(-j/subdivisions), j = 0..levels*subdivisions. With atom_radii on,
/// each center also probes the radii just above its distance to every atom,
/// where the supremum over r is approached.
struct CarlesonProbe {
    std::vector<Point> centers;
    std::vector<double> radii;
    bool atom_radii = true;

    static CarlesonProbe standard(int dim, int centers = 512, int levels = 40, int subdivisions = 8);
};

struct CarlesonReport {
    double alpha = 0.0;
    Point worst_center;
    double worst_radius = 0.0;
    std::size_t probes = 0;
};

/// max over probes of mu(B(omega, r) cap B^n) / r^(n-1), open balls.
CarlesonReport carleson_constant(const DiscreteMeasure& mu, const CarlesonProbe& probe);

}  // namespace conflab
