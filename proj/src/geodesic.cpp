#include "conflab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <tuple>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

using GridKey = std::tuple<std::string, int, double, int, int, bool>;

GridKey key_of(const Density& d, const Resolution& res) {
    return {d.id(), d.dim(), res.h, res.K, res.whitney_cells, res.extended_stencil};
}

// Shortcuts are limited to this many local cells, so any-angle chains restart
// every few cells and the extra quadrature stays cheap.
constexpr double kShortcutCells = 8.0;
constexpr double kGate = 1.02;

double stencil_radius(const ShellGrid& g, double r) { return g.resolution().stencil_reach(g.dim()) * g.local_step(r); }

void check_interior(const ShellGrid& g, const Point& y, const char* what) {
    if (y.dim != g.dim())
        throw ValidationError(std::string(what) + " " + y.str() + " does not match grid dimension " +
                              std::to_string(g.dim()));
    const double r = y.norm();
    if (!(r < 1.0)) throw DomainError(std::string(what) + " " + y.str() + " is not in the open unit ball");
    if (r > g.outer_radius() * (1.0 + 1e-12))
        throw DomainError(std::string(what) + " " + y.str() + " lies beyond the gridded region (radius " +
                          std::to_string(g.outer_radius()) + ")");
}

}  // namespace

MetricGraph::MetricGraph(const Density& d, std::shared_ptr<const ShellGrid> grid)
    : density_(d), grid_(std::move(grid)) {
    if (d.dim() != grid_->dim()) throw ValidationError("density and grid dimensions differ");
    const ShellGrid& g = *grid_;
    const QuadratureConfig quad = edge_quadrature();
    weights_.assign(g.adjacency_size(), 0.0);
    std::size_t slot = 0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::uint32_t b : g.neighbors(a)) {
            if (b > a) {
                const double w = segment_rho_length(d, g.node(a), g.node(b), quad);
                weights_[slot] = w;
                auto nb = g.neighbors(b);
                const auto pos = std::lower_bound(nb.begin(), nb.end(), static_cast<std::uint32_t>(a)) - nb.begin();
                weights_[static_cast<std::size_t>(nb.data() - g.neighbors(0).data()) + static_cast<std::size_t>(pos)] = w;
            }
            ++slot;
        }
    }
}

std::span<const double> MetricGraph::weights(std::size_t i) const {
    const auto nb = grid_->neighbors(i);
    const auto start = static_cast<std::size_t>(nb.data() - grid_->neighbors(0).data());
    return {weights_.data() + start, nb.size()};
}

std::shared_ptr<const MetricGraph> MetricGraph::shared(const Density& d, const Resolution& res) {
    static std::mutex mu;
    static std::map<GridKey, std::shared_ptr<const MetricGraph>> cache;
    const GridKey key = key_of(d, res);
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto graph = std::make_shared<const MetricGraph>(d, ShellGrid::shared(d.dim(), res));
    if (cache.size() >= 3) cache.erase(cache.begin());
    cache.emplace(key, graph);
    return graph;
}

GeodesicField::GeodesicField(std::shared_ptr<const MetricGraph> graph, const Point& source)
    : graph_(std::move(graph)), source_(source) {
    const ShellGrid& g = grid();
    const Density& d = density();
    check_interior(g, source, "source");
    const QuadratureConfig quad = MetricGraph::edge_quadrature();
    const QuadratureConfig shortcut_quad{4, 0.5};

    dist_.assign(g.size(), std::numeric_limits<double>::infinity());
    parent_.assign(g.size(), kSource);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

    std::vector<std::uint32_t> seeds;
    double radius = stencil_radius(g, source.norm());
    while (seeds.empty()) {
        g.nodes_near(source, radius, seeds);
        radius *= 2.0;
    }
    for (std::uint32_t s : seeds) {
        const double w = segment_rho_length(d, source, g.node(s), quad);
        if (w < dist_[s]) {
            dist_[s] = w;
            heap.emplace(w, s);
        }
    }

    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > dist_[u]) continue;
        const auto nb = g.neighbors(u);
        const auto w = graph_->weights(u);
        const std::uint32_t pu = parent_[u];
        for (std::size_t e = 0; e < nb.size(); ++e) {
            const std::uint32_t v = nb[e];
            double alt = du + w[e];
            std::uint32_t via = u;
            // the shortcut rarely wins when the plain edge is far off
            if (v != pu && alt < kGate * dist_[v] &&
                conflab::distance(anchor(pu), g.node(v)) <= kShortcutCells * g.shell_step(g.shell_of(v))) {
                const double shortcut = anchor_dist(pu) + segment_rho_length(d, anchor(pu), g.node(v), shortcut_quad);
                if (shortcut < alt) {
                    alt = shortcut;
                    via = pu;
                }
            }
            if (alt < dist_[v]) {
                dist_[v] = alt;
                parent_[v] = via;
                heap.emplace(alt, v);
            }
        }
    }
}

double GeodesicField::distance(const Point& y) const {
    const ShellGrid& g = grid();
    check_interior(g, y, "query point");
    const QuadratureConfig quad = MetricGraph::edge_quadrature();
    const double radius = stencil_radius(g, y.norm());
    double best = std::numeric_limits<double>::infinity();
    if (conflab::distance(y, source_) <= radius) best = segment_rho_length(density(), source_, y, quad);

    std::vector<std::uint32_t> near;
    g.nodes_near(y, radius, near);
    for (std::uint32_t c : near) {
        if (dist_[c] >= best) continue;
        best = std::min(best, dist_[c] + segment_rho_length(density(), g.node(c), y, quad));
        const std::uint32_t p = parent_[c];
        if (anchor_dist(p) < best)
            best = std::min(best, anchor_dist(p) + segment_rho_length(density(), anchor(p), y, quad));
    }
    if (!std::isfinite(best)) throw NumericalError("no grid node reaches " + y.str());
    return best;
}

GeodesicField GeodesicField::resourced(const Point& source) const { return GeodesicField(graph_, source); }

std::vector<TruncationValue> GeodesicField::boundary_truncations(const Point& omega) const {
    if (omega.dim != dim()) throw ValidationError("boundary point dimension differs from the field");
    const double m = omega.norm();
    if (std::abs(m - 1.0) > 1e-9) throw DomainError("boundary point " + omega.str() + " is not on the unit sphere");
    const Point u = omega / m;
    const ShellGrid& g = grid();
    const Resolution& res = g.resolution();
    std::vector<TruncationValue> out;
    for (int k = res.k0; k <= res.K; ++k) out.push_back({k, distance(u * g.shell_radius(g.shell_at_level(k)))});
    return out;
}

BoundaryDistance GeodesicField::boundary_distance(const Point& omega, const LimitPolicy& policy) const {
    BoundaryDistance out;
    out.truncations = boundary_truncations(omega);
    try {
        out.limit = classify_limit(out.truncations, policy);
    } catch (const DataError& e) {
        throw NumericalError("boundary distance toward " + omega.str() + " is unstable (grid too coarse?): " +
                             e.what());
    }
    switch (out.limit.verdict) {
        case Verdict::convergent: out.value = *out.limit.extrapolated; break;
        case Verdict::divergent: out.value = std::numeric_limits<double>::infinity(); break;
        case Verdict::inconclusive: out.value = out.truncations.back().value; break;
    }
    return out;
}

double GeodesicField::max_modulus(double r) const {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("max_modulus needs 0 <= r < 1");
    if (!source_at_origin()) throw PreconditionError("max_modulus needs a field sourced at the origin");
    const ShellGrid& g = grid();
    if (r > g.outer_radius() * (1.0 + 1e-12))
        throw DomainError("radius " + std::to_string(r) + " lies beyond the gridded region");
    double best = 0.0;
    for (int j = 0; j < g.shell_count() && g.shell_radius(j) <= r * (1.0 + 1e-12); ++j)
        for (std::size_t i = g.shell_begin(j); i < g.shell_end(j); ++i) best = std::max(best, dist_[i]);
    return best;
}

double GeodesicField::sphere_sup(double r) const {
    const ShellGrid& g = grid();
    if (!(r > 0.0 && r < 1.0)) throw DomainError("sphere_sup needs 0 < r < 1");
    const int j = g.nearest_shell(r);
    double best = 0.0;
    if (std::abs(g.shell_radius(j) - r) <= 1e-14) {
        for (std::size_t i = g.shell_begin(j); i < g.shell_end(j); ++i) best = std::max(best, dist_[i]);
        return best;
    }
    for (std::size_t i = g.shell_begin(j); i < g.shell_end(j); ++i)
        best = std::max(best, distance(g.node(i) * (r / g.shell_radius(j))));
    return best;
}

GeodesicField build_field(const Density& d, const Point& source, const Resolution& res) {
    return GeodesicField(MetricGraph::shared(d, res), source);
}

std::shared_ptr<const GeodesicField> origin_field(const Density& d, const Resolution& res) {
    static std::mutex mu;
    static std::map<GridKey, std::shared_ptr<const GeodesicField>> cache;
    const GridKey key = key_of(d, res);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto field = std::make_shared<const GeodesicField>(MetricGraph::shared(d, res), Point::zero(d.dim()));
    std::lock_guard lock(mu);
    if (cache.size() >= 6) cache.erase(cache.begin());
    cache.emplace(key, field);
    return field;
}

}  // namespace conflab
