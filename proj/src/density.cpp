#include "conflab/density.hpp"

#include <cmath>
#include <numbers>

#include "conflab/catalog_id.hpp"
#include "conflab/errors.hpp"

namespace conflab {

namespace {

void check_dim(int n) {
    if (n != 2 && n != 3) throw ValidationError("dimension must be 2 or 3, got " + std::to_string(n));
}

void reject_unknown(const CatalogId& id, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : id.params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ValidationError("unknown parameter '" + key + "' for density '" + id.name + "'");
    }
}

}  // namespace

Density::Density(Kind kind, int dim, double p0, double p1, double p2)
    : kind_(kind), dim_(dim), p0_(p0), p1_(p1), p2_(p2) {
    rebuild_id();
}

Density Density::constant(double c, int n) {
    check_dim(n);
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("constant density needs c > 0");
    return Density(Kind::constant, n, c, 0.0, 0.0);
}

Density Density::power(double alpha, int n) {
    check_dim(n);
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("power density needs 0 <= alpha < 1");
    return Density(Kind::power, n, alpha, 0.0, 0.0);
}

Density Density::koebe(double theta) { return Density(Kind::koebe, 2, theta, 0.0, 0.0); }

Density Density::moebius(double a_re, double a_im) {
    if (!(a_re * a_re + a_im * a_im < 1.0)) throw ValidationError("moebius density needs |a| < 1");
    return Density(Kind::moebius, 2, a_re, a_im, 0.0);
}

Density Density::from_id(std::string_view text) {
    const CatalogId id = CatalogId::parse(text);
    const int n = static_cast<int>(id.get("n", 2.0));
    auto make = [&]() -> Density {
        if (id.name == "constant") {
            reject_unknown(id, {"c", "n", "scale"});
            return constant(id.get("c", 1.0), n);
        }
        if (id.name == "power") {
            reject_unknown(id, {"alpha", "n", "scale"});
            return power(id.get("alpha", 0.5), n);
        }
        if (id.name == "koebe") {
            reject_unknown(id, {"theta", "n", "scale"});
            if (n != 2) throw ValidationError("koebe density is planar (n = 2)");
            return koebe(id.get("theta", 0.0));
        }
        if (id.name == "moebius") {
            reject_unknown(id, {"a", "b", "n", "scale"});
            if (n != 2) throw ValidationError("moebius density is planar (n = 2)");
            return moebius(id.get("a", 0.5), id.get("b", 0.0));
        }
        throw ValidationError("unknown density id '" + id.name + "'");
    };
    Density d = make();
    if (auto s = id.find("scale")) d = d.scaled(*s);
    return d;
}

Density Density::scaled(double lambda) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("density scale must be positive");
    Density out = *this;
    out.scale_ = scale_ * lambda;
    out.rebuild_id();
    return out;
}

void Density::rebuild_id() {
    CatalogId id;
    switch (kind_) {
        case Kind::constant:
            id.name = "constant";
            id.params["c"] = p0_;
            break;
        case Kind::power:
            id.name = "power";
            id.params["alpha"] = p0_;
            break;
        case Kind::koebe:
            id.name = "koebe";
            if (p0_ != 0.0) id.params["theta"] = p0_;
            break;
        case Kind::moebius:
            id.name = "moebius";
            id.params["a"] = p0_;
            if (p1_ != 0.0) id.params["b"] = p1_;
            break;
    }
    if (dim_ != 2) id.params["n"] = dim_;
    if (scale_ != 1.0) id.params["scale"] = scale_;
    id_ = id.str();
}

std::optional<double> Density::claimed_a() const {
    switch (kind_) {
        case Kind::constant: return 1.0;
        // 1 - |y| ranges over [(1-|z|)/2, 3(1-|z|)/2] on a Whitney ball.
        case Kind::power: return std::pow(3.0, p0_);
        case Kind::koebe:
        case Kind::moebius: return std::exp(12.0);
    }
    return std::nullopt;
}

std::optional<double> Density::claimed_b() const {
    switch (kind_) {
        case Kind::constant: return dim_ == 2 ? std::numbers::pi : 4.0 * std::numbers::pi / 3.0;
        case Kind::koebe:
        case Kind::moebius: return std::numbers::pi;
        case Kind::power: return std::nullopt;
    }
    return std::nullopt;
}

double Density::unchecked(double r, double s, const Point& u) const {
    switch (kind_) {
        case Kind::constant:
            return scale_ * p0_;
        case Kind::power:
            return scale_ * std::pow(s, -p0_);
        case Kind::koebe: {
            // z = r u, e = direction of the pole. Written with chords so both
            // factors stay accurate near e and near -e.
            const Point e = unit_circle(p0_);
            const double one_minus_z2 = s * s + r * (u - e).norm2();
            const double one_plus_z2 = s * s + r * (u + e).norm2();
            return scale_ * std::sqrt(one_plus_z2) / (one_minus_z2 * std::sqrt(one_minus_z2));
        }
        case Kind::moebius: {
            const double ar = p0_, ai = p1_;
            const double a2 = ar * ar + ai * ai;
            // |1 - conj(a) z|^2 for z = r u.
            const double re = 1.0 - r * (ar * u[0] + ai * u[1]);
            const double im = -r * (ar * u[1] - ai * u[0]);
            return scale_ * (1.0 - a2) / (re * re + im * im);
        }
    }
    return 0.0;
}

double Density::at_radius(double r, double one_minus_r, const Point& u) const {
    const double v = unchecked(r, one_minus_r, u);
    if (!(v > 0.0) || !std::isfinite(v))
        throw NumericalError("density " + id_ + " is not finite and positive at radius " + std::to_string(r) +
                             " along " + u.str());
    return v;
}

double Density::operator()(const Point& x) const {
    if (x.dim != dim_)
        throw ValidationError("point " + x.str() + " has dimension " + std::to_string(x.dim) + ", density " + id_ +
                              " expects " + std::to_string(dim_));
    const double r = x.norm();
    if (!(r < 1.0)) throw DomainError("point " + x.str() + " is not in the open unit ball");
    const Point u = r > 0.0 ? x / r : Point::e1(dim_);
    const double v = unchecked(r, 1.0 - r, u);
    if (!(v > 0.0) || !std::isfinite(v))
        throw NumericalError("density " + id_ + " is not finite and positive at " + x.str());
    return v;
}

std::vector<Point> Density::boundary_hotspots() const {
    switch (kind_) {
        case Kind::koebe: return {unit_circle(p0_)};
        case Kind::moebius: {
            const double m = std::hypot(p0_, p1_);
            if (m == 0.0) return {};
            return {Point(p0_ / m, p1_ / m)};
        }
        default: return {};
    }
}

}  // namespace conflab
