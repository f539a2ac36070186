#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conflab/point.hpp"

namespace conflab {

inline constexpr const char* kCatalogVersion = "1";

/// A catalog density on the unit ball B^n.
///
/// The catalog is closed: constant, power, koebe and moebius, each addressable
/// by a string id ("power:alpha=0.5", "koebe:theta=1.2", ...). Every entry is
/// continuous and strictly positive on the open ball. A positive multiplier is
/// available on all entries through the "scale" parameter.
class Density {
public:
    enum class Kind { constant, power, koebe, moebius };

    static Density constant(double c = 1.0, int n = 2);
    /// rho(x) = (1 - |x|)^(-alpha), 0 <= alpha < 1.
    static Density power(double alpha, int n = 2);
    /// |f'| for f(z) = z / (1 - z)^2 precomposed with the rotation z -> e^{-i theta} z.
    static Density koebe(double theta = 0.0);
    /// |f'| for the disk automorphism f(z) = (z - a) / (1 - conj(a) z), a = a_re + i a_im.
    static Density moebius(double a_re = 0.5, double a_im = 0.0);

    /// Resolves an id such as "power:alpha=0.25,n=3". Throws ValidationError.
    static Density from_id(std::string_view id);

    Density scaled(double lambda) const;

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::string& id() const { return id_; }
    double scale() const { return scale_; }
    bool is_radial() const { return kind_ == Kind::constant || kind_ == Kind::power; }

    /// Claimed Harnack constant A, when the catalog knows one.
    std::optional<double> claimed_a() const;
    /// Claimed volume-growth constant B, when the catalog knows one.
    std::optional<double> claimed_b() const;

    /// rho(x) for an interior point; DomainError outside the open ball,
    /// NumericalError if the value is not finite and positive.
    double operator()(const Point& x) const;

    /// rho(r u) for a unit direction u, given r and 1 - r separately so that
    /// points very close to the sphere keep their relative accuracy.
    double at_radius(double r, double one_minus_r, const Point& u) const;

    /// Boundary directions near which the density concentrates. Quadratures
    /// grade their angular panels toward these points.
    std::vector<Point> boundary_hotspots() const;

private:
    Density(Kind kind, int dim, double p0, double p1, double p2);
    void rebuild_id();
    double unchecked(double r, double one_minus_r, const Point& u) const;

    Kind kind_ = Kind::constant;
    int dim_ = 2;
    // constant: p0 = c; power: p0 = alpha; koebe: p0 = theta;
    // moebius: (p0, p1) = a.
    double p0_ = 1.0;
    double p1_ = 0.0;
    double p2_ = 0.0;
    double scale_ = 1.0;
    std::string id_;
};

/// Evaluates rho at an interior point (thin wrapper kept for symmetry with the
/// other catalog operations).
inline double eval_density(const Density& d, const Point& x) { return d(x); }

}  // namespace conflab
