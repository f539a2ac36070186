#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conflab {

/// A growth function psi: [0, inf] -> [0, inf], strictly increasing with
/// psi(0) = 0, together with its derivative and inverse.
///
/// Catalog:
///   power_psi:p=P   psi(t) = t^P
///   log_doubling    psi(t) = 1/log(1/t) for t < 1/2, 2t/log 2 for t >= 1/2
///
/// log_doubling is doubling but fails the concave-multiplicative condition.
/// It has a corner at t = 1/2; derivative() returns the right derivative there.
class GrowthFunction {
public:
    enum class Kind { power, log_doubling };

    static GrowthFunction power(double p);
    static GrowthFunction log_doubling();
    /// Resolves "power_psi:p=0.4" (also "power:p=0.4") or "log_doubling".
    static GrowthFunction from_id(std::string_view id);

    Kind kind() const { return kind_; }
    bool is_power() const { return kind_ == Kind::power; }
    double exponent() const { return p_; }
    const std::string& id() const { return id_; }

    double operator()(double t) const;
    double derivative(double t) const;
    double inverse(double y) const;

private:
    GrowthFunction(Kind kind, double p);

    Kind kind_ = Kind::power;
    double p_ = 1.0;
    std::string id_;
};

struct GrowthSample {
    double psi = 0.0;
    double psi_prime = 0.0;
    double roundtrip = 0.0;  ///< psi_inverse(psi(t))
};

/// Consistent (psi, psi', psi^{-1}(psi)) triple at t >= 0. DomainError for t < 0.
GrowthSample growth_eval(const GrowthFunction& g, double t);

/// Sample points for the property checks.
struct GrowthGrid {
    std::vector<double> t_values;                     ///< doubling and superadditivity samples
    std::vector<std::pair<double, double>> ab_pairs;  ///< (a, b) with a >= 0, 0 < b < 1
    std::vector<double> c_candidates;                 ///< ascending C values for psi(ab) <= b psi(Ca)

    /// Log-spaced t in [1e-8, 1e8], a in [1e-6, 1e3], b in [1e-8, 0.32], C = 2^0 .. 2^20.
    static GrowthGrid standard();
};

struct GrowthProperties {
    double doubling_constant = 0.0;       ///< sup_t psi(2t)/psi(t) over the grid
    bool superadditive = false;           ///< psi(t1) + psi(t2) <= psi(t1 + t2) on all pairs
    std::optional<double> multiplicative_c;  ///< smallest passing C, empty if none
    bool concave = false;                 ///< midpoint concavity on consecutive grid triples
    std::size_t skipped_zero = 0;         ///< t = 0 samples skipped in ratio checks
    std::vector<std::string> warnings;
};

GrowthProperties growth_properties(const GrowthFunction& g, const GrowthGrid& grid);

}  // namespace conflab
