#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conflab/density.hpp"
#include "conflab/geodesic.hpp"
#include "conflab/growth.hpp"
#include "conflab/limit.hpp"
#include "conflab/sphere_rule.hpp"

namespace conflab {

/// A truncated functional and the verdict on its limit.
struct AnalysisReport {
    std::string functional;
    nlohmann::json params = nlohmann::json::object();
    std::vector<TruncationValue> truncations;
    LimitResult limit;
    std::vector<std::string> warnings;

    Verdict verdict() const { return limit.verdict; }
    /// Last truncation value (0 when empty).
    double last_value() const { return truncations.empty() ? 0.0 : truncations.back().value; }
};

/// Classifies `report.truncations` into `report.limit`. A sequence the
/// classifier rejects (too short, decreasing) leaves the report inconclusive
/// with a warning instead of throwing.
void classify_report(AnalysisReport& report, const LimitPolicy& policy);

enum class OrliczKind { hardy_sup, boundary, maximal, maxmod };
std::string_view to_string(OrliczKind kind);
OrliczKind parse_orlicz_kind(std::string_view text);
inline constexpr OrliczKind kAllOrliczKinds[] = {OrliczKind::hardy_sup, OrliczKind::boundary, OrliczKind::maximal,
                                                 OrliczKind::maxmod};

/// Per-level samples of an origin-sourced field, shared by the four Orlicz
/// functionals. For each truncation level k = k0..K:
///   rule(l)  sphere rule; for n = 2 the ring nodes of the shell at radius
///            1 - 2^(-k) (so resolution follows the Whitney scale of the level),
///            for n = 3 the standard product rule
///   D(l)     |(1 - 2^(-k)) omega|_rho at the rule nodes
///   S(l)     rho* truncated at the level: max distance over grid nodes of the
///            Stolz cone with |x| <= 1 - 2^(-k), and over D at levels <= l
/// and per shell j: radius r_j and M(r_j) = max distance over |x| <= r_j.
class FieldProfiles {
public:
    explicit FieldProfiles(std::shared_ptr<const GeodesicField> field);

    const GeodesicField& field() const { return *field_; }
    int dim() const { return field_->dim(); }
    std::size_t levels() const { return ks_.size(); }
    int level_k(std::size_t l) const { return ks_[l]; }
    const SphereRule& rule(std::size_t l) const { return rules_[l]; }
    const std::vector<double>& D(std::size_t l) const { return d_[l]; }
    const std::vector<double>& S(std::size_t l) const { return s_[l]; }
    const std::vector<double>& shell_radii() const { return radii_; }
    const std::vector<double>& shell_max() const { return m_; }
    /// Index into shell_radii() of the shell at level l.
    int level_shell(std::size_t l) const { return level_shell_[l]; }

private:
    void build_planar();
    void build_spatial();

    std::shared_ptr<const GeodesicField> field_;
    std::vector<int> ks_;
    std::vector<int> level_shell_;
    std::vector<SphereRule> rules_;
    std::vector<std::vector<double>> d_, s_;
    std::vector<double> radii_, m_;
};

/// Profiles of the origin field of d at res, cached like origin_field.
std::shared_ptr<const FieldProfiles> field_profiles(const Density& d, const Resolution& res);

/// Truncated Hardy-Orlicz functional:
///   hardy_sup  running sup over levels of int psi(delta |r omega|_rho) dsigma
///   boundary   int psi(delta |omega|_rho) dsigma with |omega|_rho truncated at the level
///   maximal    int psi(delta rho*(omega)) dsigma, rho* truncated at the level
///   maxmod     int_0^(1-2^-k) (1-r)^(n-2) psi(delta M(r)) dr, trapezoid on shell radii
/// DomainError for delta <= 0.
AnalysisReport orlicz_functional(const FieldProfiles& profiles, const GrowthFunction& g, double delta,
                                 OrliczKind kind, const LimitPolicy& policy = {});

/// Volume functionals, integrated in polar form shell by shell over the
/// dyadic annuli 1 - 2^(1-k) <= |x| <= 1 - 2^(-k), k = 1..shells.
struct VolumeQuadrature {
    int shells = 32;
    int radial_order = 12;   ///< Gauss-Legendre nodes per annulus
    int angular_order = 8;   ///< Gauss-Legendre nodes per angular panel (n = 2)
    int uniform_angles = 64; ///< angular nodes when the density has no hotspot (n = 2)
    int theta_nodes = 48;    ///< n = 3 product rule
    int phi_nodes = 96;
};

enum class VolumeKind { energy, interior_psi, radial_p };
std::string_view to_string(VolumeKind kind);

/// energy(p):        int rho^p (1-|x|)^(p-1) dx
/// interior_psi(g):  int psi(rho(x)(1-|x|)) dx / (1-|x|)
/// radial_p(p):      int_S (int_0^1 rho(t omega) dt)^p dsigma
AnalysisReport energy_functional(const Density& d, double p, const VolumeQuadrature& quad = {},
                                 const LimitPolicy& policy = {});
AnalysisReport interior_psi_functional(const Density& d, const GrowthFunction& g, const VolumeQuadrature& quad = {},
                                       const LimitPolicy& policy = {});
AnalysisReport radial_p_functional(const Density& d, double p, const VolumeQuadrature& quad = {},
                                   const LimitPolicy& policy = {});

/// Angular rule used by the volume functionals: for n = 2 composite
/// Gauss-Legendre panels graded geometrically toward the density's boundary
/// hotspots down to width min_width, or equal angles when there are none; for
/// n = 3 the product rule.
SphereRule volume_sphere_rule(const Density& d, double min_width, const VolumeQuadrature& quad);

/// Result of the four-way Orlicz check over a delta scan.
struct KindSummary {
    OrliczKind kind = OrliczKind::hardy_sup;
    Verdict verdict = Verdict::inconclusive;  ///< convergent if some delta converges
    std::optional<double> best_delta;         ///< largest convergent delta
    std::vector<AnalysisReport> reports;      ///< one per scanned delta
};

struct Characterization {
    std::string density_id;
    std::string psi_id;
    std::vector<double> deltas;
    std::vector<KindSummary> kinds;
    bool consistent = false;                ///< the decided verdicts agree
    Verdict overall = Verdict::inconclusive;
    std::vector<std::string> inconclusive;  ///< kinds without a decision
};

/// delta_j = 2^(-j), j = 0..8.
std::vector<double> default_delta_scan();

/// Runs all four kinds over the delta scan. For power psi the functional is
/// homogeneous in delta, so only delta = 1 is evaluated and the verdict is
/// shared by the whole scan.
Characterization characterize(const FieldProfiles& profiles, const GrowthFunction& g,
                              const std::vector<double>& deltas = default_delta_scan(),
                              const LimitPolicy& policy = {});

struct BetaEstimate {
    double slope = 0.0;
    double beta = 1.0;
    double p0 = 0.0;  ///< +inf when the fitted slope is below slope_floor
    std::vector<TruncationValue> log_m;  ///< (k, log M(1 - 2^-k))
    double residual = 0.0;
};

/// Fits log M(1 - 2^-k) against k log 2 over the last half of the levels.
/// beta = max(slope, 1), p0 = (n-1)/beta; slopes below slope_floor mean a
/// bounded metric and give p0 = +inf. DataError with fewer than 4 levels.
BetaEstimate estimate_beta_p0(const GeodesicField& field, double slope_floor = 0.1);

}  // namespace conflab
