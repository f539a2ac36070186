#include "conflab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "conflab/errors.hpp"
#include "conflab/stolz.hpp"

namespace conflab {

void classify_report(AnalysisReport& report, const LimitPolicy& policy) {
    try {
        report.limit = classify_limit(report.truncations, policy);
    } catch (const DataError& e) {
        report.limit = LimitResult{};
        report.warnings.push_back(std::string("limit not classified: ") + e.what());
    }
}

std::string_view to_string(OrliczKind kind) {
    switch (kind) {
        case OrliczKind::hardy_sup: return "hardy_sup";
        case OrliczKind::boundary: return "boundary";
        case OrliczKind::maximal: return "maximal";
        case OrliczKind::maxmod: return "maxmod";
    }
    return "hardy_sup";
}

OrliczKind parse_orlicz_kind(std::string_view text) {
    for (OrliczKind k : kAllOrliczKinds)
        if (to_string(k) == text) return k;
    throw ValidationError("unknown functional kind '" + std::string(text) + "'");
}

namespace {

// Max of v over the circular index windows [lo_i, hi_i], both nondecreasing in i.
void window_max(const std::vector<double>& v, const std::vector<long>& lo, const std::vector<long>& hi,
                std::vector<double>& out) {
    const auto n = static_cast<long>(v.size());
    auto at = [&](long m) { return v[static_cast<std::size_t>(((m % n) + n) % n)]; };
    std::deque<long> dq;
    long next = lo.empty() ? 0 : lo.front();
    for (std::size_t i = 0; i < lo.size(); ++i) {
        for (; next <= hi[i]; ++next) {
            const double x = at(next);
            while (!dq.empty() && at(dq.back()) <= x) dq.pop_back();
            dq.push_back(next);
        }
        while (!dq.empty() && dq.front() < lo[i]) dq.pop_front();
        out[i] = dq.empty() ? 0.0 : at(dq.front());
    }
}

}  // namespace

FieldProfiles::FieldProfiles(std::shared_ptr<const GeodesicField> field) : field_(std::move(field)) {
    if (!field_->source_at_origin()) throw PreconditionError("functionals need a field sourced at the origin");
    const ShellGrid& g = field_->grid();
    const Resolution& res = g.resolution();
    for (int k = res.k0; k <= res.K; ++k) {
        ks_.push_back(k);
        level_shell_.push_back(g.shell_at_level(k));
    }
    const int last = level_shell_.back();
    double running = 0.0;
    for (int j = 0; j <= last; ++j) {
        for (std::size_t i = g.shell_begin(j); i < g.shell_end(j); ++i)
            running = std::max(running, field_->node_distance(i));
        radii_.push_back(g.shell_radius(j));
        m_.push_back(running);
    }
    if (dim() == 2)
        build_planar();
    else
        build_spatial();
}

void FieldProfiles::build_planar() {
    const ShellGrid& g = field_->grid();
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t l = 0; l < ks_.size(); ++l) {
        const int J = level_shell_[l];
        const std::size_t first = g.shell_begin(J);
        const std::size_t count = g.shell_end(J) - first;
        SphereRule rule;
        rule.dim = 2;
        std::vector<double> d(count);
        for (std::size_t i = 0; i < count; ++i) {
            rule.nodes.push_back(g.node(first + i) / g.shell_radius(J));
            rule.weights.push_back(two_pi / static_cast<double>(count));
            d[i] = field_->node_distance(first + i);
        }

        std::vector<double> cum(count, 0.0), win(count);
        std::vector<long> lo(count), hi(count);
        std::vector<double> ring;
        for (int j = 0; j <= J; ++j) {
            const std::size_t f = g.shell_begin(j);
            const std::size_t n = g.shell_end(j) - f;
            ring.assign(n, 0.0);
            double whole = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                ring[m] = field_->node_distance(f + m);
                whole = std::max(whole, ring[m]);
            }
            const double r = g.shell_radius(j);
            const double phi = stolz_half_angle(r);
            const double step = two_pi / static_cast<double>(n);
            if (j == 0 || phi >= std::numbers::pi || 2.0 * phi / step + 1.0 >= static_cast<double>(n)) {
                for (double& c : cum) c = std::max(c, whole);
                continue;
            }
            for (std::size_t i = 0; i < count; ++i) {
                const double theta = two_pi * static_cast<double>(i) / static_cast<double>(count);
                lo[i] = static_cast<long>(std::ceil((theta - phi) / step - 1e-9));
                hi[i] = static_cast<long>(std::floor((theta + phi) / step + 1e-9));
            }
            window_max(ring, lo, hi, win);
            for (std::size_t i = 0; i < count; ++i) cum[i] = std::max(cum[i], win[i]);
        }
        for (std::size_t i = 0; i < count; ++i) cum[i] = std::max(cum[i], d[i]);
        rules_.push_back(std::move(rule));
        d_.push_back(std::move(d));
        s_.push_back(std::move(cum));
    }
}

void FieldProfiles::build_spatial() {
    const ShellGrid& g = field_->grid();
    const SphereRule rule = SphereRule::standard(3);
    const std::size_t count = rule.size();
    std::vector<double> cum(count, 0.0), dmax(count, 0.0);
    std::vector<std::uint32_t> cand;
    int j = 0;
    for (std::size_t l = 0; l < ks_.size(); ++l) {
        const int J = level_shell_[l];
        for (; j <= J; ++j) {
            const double r = g.shell_radius(j);
            const double phi = stolz_half_angle(r);
            if (j == 0 || phi >= std::numbers::pi) {
                double whole = 0.0;
                for (std::size_t i = g.shell_begin(j); i < g.shell_end(j); ++i)
                    whole = std::max(whole, field_->node_distance(i));
                for (double& c : cum) c = std::max(c, whole);
                continue;
            }
            for (std::size_t i = 0; i < count; ++i) {
                cand.clear();
                g.shell_window(j, rule.nodes[i], phi, cand);
                for (std::uint32_t c : cand)
                    if (in_stolz_cone(rule.nodes[i], g.node(c))) cum[i] = std::max(cum[i], field_->node_distance(c));
            }
        }
        std::vector<double> d(count);
        for (std::size_t i = 0; i < count; ++i) {
            d[i] = field_->distance(rule.nodes[i] * g.shell_radius(J));
            dmax[i] = std::max(dmax[i], d[i]);
        }
        std::vector<double> s(count);
        for (std::size_t i = 0; i < count; ++i) s[i] = std::max(cum[i], dmax[i]);
        rules_.push_back(rule);
        d_.push_back(std::move(d));
        s_.push_back(std::move(s));
    }
}

std::shared_ptr<const FieldProfiles> field_profiles(const Density& d, const Resolution& res) {
    using Key = std::tuple<std::string, double, int, int, bool>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const FieldProfiles>> cache;
    const Key key{d.id(), res.h, res.K, res.whitney_cells, res.extended_stencil};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto profiles = std::make_shared<const FieldProfiles>(origin_field(d, res));
    std::lock_guard lock(mu);
    if (cache.size() >= 8) cache.erase(cache.begin());
    cache.emplace(key, profiles);
    return profiles;
}

AnalysisReport orlicz_functional(const FieldProfiles& profiles, const GrowthFunction& g, double delta,
                                 OrliczKind kind, const LimitPolicy& policy) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
    AnalysisReport report;
    report.functional = std::string(to_string(kind));
    report.params = {{"density", profiles.field().density().id()}, {"psi", g.id()}, {"delta", delta}};

    const int n = profiles.dim();
    double running = 0.0;
    for (std::size_t l = 0; l < profiles.levels(); ++l) {
        const int k = profiles.level_k(l);
        double value = 0.0;
        switch (kind) {
            case OrliczKind::hardy_sup:
            case OrliczKind::boundary:
            case OrliczKind::maximal: {
                const SphereRule& rule = profiles.rule(l);
                const std::vector<double>& v = kind == OrliczKind::maximal ? profiles.S(l) : profiles.D(l);
                for (std::size_t i = 0; i < rule.size(); ++i) value += rule.weights[i] * g(delta * v[i]);
                if (kind == OrliczKind::hardy_sup) {
                    running = std::max(running, value);
                    value = running;
                }
                break;
            }
            case OrliczKind::maxmod: {
                const auto& r = profiles.shell_radii();
                const auto& m = profiles.shell_max();
                auto f = [&](std::size_t j) { return std::pow(1.0 - r[j], n - 2) * g(delta * m[j]); };
                const auto last = static_cast<std::size_t>(profiles.level_shell(l));
                for (std::size_t j = 1; j <= last; ++j) value += 0.5 * (r[j] - r[j - 1]) * (f(j) + f(j - 1));
                break;
            }
        }
        if (!std::isfinite(value)) throw NumericalError(report.functional + " is not finite at level " + std::to_string(k));
        report.truncations.push_back({k, value});
    }
    classify_report(report, policy);
    if (kind == OrliczKind::hardy_sup && report.truncations.size() >= 2) {
        const double a = report.truncations[report.truncations.size() - 2].value;
        const double b = report.truncations.back().value;
        if (b > a * (1.0 + 1e-6)) report.warnings.push_back("sup over r still moving at the last shell");
    }
    return report;
}

std::vector<double> default_delta_scan() {
    std::vector<double> out;
    for (int j = 0; j <= 8; ++j) out.push_back(std::ldexp(1.0, -j));
    return out;
}

Characterization characterize(const FieldProfiles& profiles, const GrowthFunction& g, const std::vector<double>& deltas,
                              const LimitPolicy& policy) {
    if (deltas.empty()) throw DomainError("delta scan is empty");
    Characterization out;
    out.density_id = profiles.field().density().id();
    out.psi_id = g.id();
    out.deltas = g.is_power() ? std::vector<double>{1.0} : deltas;

    for (OrliczKind kind : kAllOrliczKinds) {
        KindSummary ks;
        ks.kind = kind;
        bool all_divergent = true;
        for (double delta : out.deltas) {
            AnalysisReport r = orlicz_functional(profiles, g, delta, kind, policy);
            if (r.verdict() == Verdict::convergent && (!ks.best_delta || delta > *ks.best_delta)) ks.best_delta = delta;
            if (r.verdict() != Verdict::divergent) all_divergent = false;
            ks.reports.push_back(std::move(r));
        }
        if (ks.best_delta)
            ks.verdict = Verdict::convergent;
        else if (all_divergent)
            ks.verdict = Verdict::divergent;
        else
            ks.verdict = Verdict::inconclusive;
        if (ks.verdict == Verdict::inconclusive) out.inconclusive.push_back(std::string(to_string(kind)));
        out.kinds.push_back(std::move(ks));
    }
    // agreement among the kinds that reached a decision
    out.consistent = true;
    std::optional<Verdict> first;
    for (const auto& ks : out.kinds) {
        if (ks.verdict == Verdict::inconclusive) continue;
        if (!first) first = ks.verdict;
        out.consistent = out.consistent && ks.verdict == *first;
    }
    if (!out.inconclusive.empty() || !first)
        out.overall = Verdict::inconclusive;
    else
        out.overall = out.consistent ? *first : Verdict::inconclusive;
    return out;
}

BetaEstimate estimate_beta_p0(const GeodesicField& field, double slope_floor) {
    if (!field.source_at_origin()) throw PreconditionError("estimate_beta_p0 needs a field sourced at the origin");
    const ShellGrid& g = field.grid();
    const int K = g.resolution().K;
    if (K < 4) throw DataError("estimate_beta_p0 needs at least 4 shells, got " + std::to_string(K));
    BetaEstimate out;
    for (int k = 1; k <= K; ++k) {
        const double m = field.max_modulus(g.shell_radius(g.shell_at_level(k)));
        out.log_m.push_back({k, std::log(m)});
    }
    const std::size_t take = std::max<std::size_t>(4, out.log_m.size() / 2);
    std::vector<double> x, y;
    for (std::size_t i = out.log_m.size() - take; i < out.log_m.size(); ++i) {
        x.push_back(out.log_m[i].k * std::numbers::ln2);
        y.push_back(out.log_m[i].value);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    out.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (my + out.slope * (x[i] - mx));
        ss += e * e;
    }
    out.residual = std::sqrt(ss / static_cast<double>(x.size()));
    out.beta = std::max(out.slope, 1.0);
    out.p0 = out.slope < slope_floor ? std::numeric_limits<double>::infinity() : (g.dim() - 1) / out.beta;
    return out;
}

}  // namespace conflab
