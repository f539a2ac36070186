#include "conflab/growth.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "conflab/catalog_id.hpp"
#include "conflab/errors.hpp"

namespace conflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::numbers::ln2;

}  // namespace

GrowthFunction::GrowthFunction(Kind kind, double p) : kind_(kind), p_(p) {
    if (kind_ == Kind::power) {
        CatalogId id{"power_psi", {{"p", p}}};
        id_ = id.str();
    } else {
        id_ = "log_doubling";
    }
}

GrowthFunction GrowthFunction::power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("power growth function needs 0 < p < inf");
    return GrowthFunction(Kind::power, p);
}

GrowthFunction GrowthFunction::log_doubling() { return GrowthFunction(Kind::log_doubling, 0.0); }

GrowthFunction GrowthFunction::from_id(std::string_view text) {
    const CatalogId id = CatalogId::parse(text);
    if (id.name == "power_psi" || id.name == "power") {
        for (const auto& [k, v] : id.params)
            if (k != "p") throw ValidationError("unknown parameter '" + k + "' for growth function " + id.name);
        return power(id.get("p", 1.0));
    }
    if (id.name == "log_doubling") {
        if (!id.params.empty()) throw ValidationError("log_doubling takes no parameters");
        return log_doubling();
    }
    throw ValidationError("unknown growth function id '" + id.name + "'");
}

double GrowthFunction::operator()(double t) const {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth function argument must be >= 0");
    if (t == 0.0) return 0.0;
    if (std::isinf(t)) return kInf;
    if (kind_ == Kind::power) return std::pow(t, p_);
    return t < 0.5 ? -1.0 / std::log(t) : 2.0 * t / kLn2;
}

double GrowthFunction::derivative(double t) const {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth function argument must be >= 0");
    if (kind_ == Kind::power) {
        if (t == 0.0) return p_ < 1.0 ? kInf : (p_ == 1.0 ? 1.0 : 0.0);
        return p_ * std::pow(t, p_ - 1.0);
    }
    if (t == 0.0) return kInf;
    if (t < 0.5) {
        const double l = std::log(t);
        return 1.0 / (t * l * l);
    }
    return 2.0 / kLn2;
}

double GrowthFunction::inverse(double y) const {
    if (y < 0.0 || std::isnan(y)) throw DomainError("growth function inverse needs y >= 0");
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    if (kind_ == Kind::power) return std::pow(y, 1.0 / p_);
    return y < 1.0 / kLn2 ? std::exp(-1.0 / y) : y * kLn2 / 2.0;
}

GrowthSample growth_eval(const GrowthFunction& g, double t) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth_eval needs t >= 0, got " + std::to_string(t));
    GrowthSample s;
    s.psi = g(t);
    s.psi_prime = g.derivative(t);
    s.roundtrip = g.inverse(s.psi);
    return s;
}

GrowthGrid GrowthGrid::standard() {
    GrowthGrid grid;
    for (int i = -32; i <= 32; ++i) grid.t_values.push_back(std::pow(10.0, i / 4.0));
    for (int i = -12; i <= 6; ++i) {
        const double a = std::pow(10.0, i / 2.0);
        for (int j = 1; j <= 16; ++j) grid.ab_pairs.emplace_back(a, std::pow(10.0, -j / 2.0));
    }
    for (int k = 0; k <= 20; ++k) grid.c_candidates.push_back(std::ldexp(1.0, k));
    return grid;
}

GrowthProperties growth_properties(const GrowthFunction& g, const GrowthGrid& grid) {
    GrowthProperties out;
    constexpr double rel = 1e-12;

    std::vector<double> ts;
    for (double t : grid.t_values) {
        if (t < 0.0) throw DomainError("growth grid contains a negative t");
        if (t == 0.0) {
            ++out.skipped_zero;
            continue;
        }
        ts.push_back(t);
    }
    if (out.skipped_zero > 0) out.warnings.push_back("t = 0 skipped in ratio checks (0/0)");

    for (double t : ts) {
        const double ratio = g(2.0 * t) / g(t);
        if (ratio > out.doubling_constant) out.doubling_constant = ratio;
    }

    out.superadditive = true;
    for (std::size_t i = 0; i < ts.size() && out.superadditive; ++i)
        for (std::size_t j = i; j < ts.size(); ++j) {
            const double lhs = g(ts[i]) + g(ts[j]);
            const double rhs = g(ts[i] + ts[j]);
            if (lhs > rhs * (1.0 + rel)) {
                out.superadditive = false;
                break;
            }
        }

    for (double c : grid.c_candidates) {
        bool holds = true;
        for (const auto& [a, b] : grid.ab_pairs) {
            if (!(b > 0.0 && b < 1.0) || a < 0.0) throw DomainError("(a, b) pairs need a >= 0 and 0 < b < 1");
            if (g(a * b) > b * g(c * a) * (1.0 + rel)) {
                holds = false;
                break;
            }
        }
        if (holds) {
            out.multiplicative_c = c;
            break;
        }
    }

    out.concave = true;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double m = 0.5 * (ts[i] + ts[i + 1]);
        if (g(m) < 0.5 * (g(ts[i]) + g(ts[i + 1])) * (1.0 - rel)) {
            out.concave = false;
            break;
        }
    }
    return out;
}

}  // namespace conflab
