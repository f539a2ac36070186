#pragma once

#include <memory>
#include <span>
#include <vector>

#include "conflab/density.hpp"
#include "conflab/limit.hpp"
#include "conflab/quadrature.hpp"
#include "conflab/shell_grid.hpp"

namespace conflab {

/// A shell grid with rho-length edge weights. Weights are aligned with the
/// grid's CSR adjacency and computed once per unordered node pair.
class MetricGraph {
public:
    MetricGraph(const Density& d, std::shared_ptr<const ShellGrid> grid);

    /// Cached by density id and grid resolution.
    static std::shared_ptr<const MetricGraph> shared(const Density& d, const Resolution& res);

    const Density& density() const { return density_; }
    const ShellGrid& grid() const { return *grid_; }
    std::span<const double> weights(std::size_t i) const;

    /// Quadrature used for edges and stubs: the segments are already Whitney
    /// sized, so a low order suffices.
    static QuadratureConfig edge_quadrature() { return {4, 0.25}; }

private:
    Density density_;
    std::shared_ptr<const ShellGrid> grid_;
    std::vector<double> weights_;
};

struct BoundaryDistance {
    std::vector<TruncationValue> truncations;
    LimitResult limit;
    /// Extrapolated limit when convergent, +inf when divergent, the last
    /// truncation value when inconclusive.
    double value = 0.0;
};

/// Single-source shortest paths over a MetricGraph, with any-angle
/// relaxation: besides every edge (u, v), a node v may also be reached by the
/// straight segment from the parent of u. Each label is still the rho-length of
/// an actual polyline, and every edge inequality holds after the pass.
/// Immutable.
class GeodesicField {
public:
    GeodesicField(std::shared_ptr<const MetricGraph> graph, const Point& source);

    const Density& density() const { return graph_->density(); }
    const ShellGrid& grid() const { return graph_->grid(); }
    const MetricGraph& graph() const { return *graph_; }
    int dim() const { return grid().dim(); }
    const Point& source() const { return source_; }
    bool source_at_origin() const { return source_.norm() == 0.0; }
    std::span<const double> dist() const { return dist_; }
    double node_distance(std::size_t i) const { return dist_[i]; }

    /// Graph distance of a nearby node plus the rho-length of the straight stub
    /// to y; the minimum over nodes within one stencil reach. DomainError if y
    /// is outside the open ball or beyond the outermost shell.
    double distance(const Point& y) const;

    /// Same graph, new source.
    GeodesicField resourced(const Point& source) const;

    /// distance to (1 - 2^(-k)) omega for k = k0..K, then classify_limit.
    /// NumericalError when the sequence decreases beyond tolerance.
    BoundaryDistance boundary_distance(const Point& omega, const LimitPolicy& policy = {}) const;

    /// Truncated boundary distances only, one per level k0..K.
    std::vector<TruncationValue> boundary_truncations(const Point& omega) const;

    /// M(r): max of dist over nodes with |x| <= r. Needs the source at 0.
    double max_modulus(double r) const;
    /// max of distance over the sphere of radius r, sampled at the angular
    /// layout of the nearest shell.
    double sphere_sup(double r) const;

private:
    static constexpr std::uint32_t kSource = 0xffffffffu;
    const Point& anchor(std::uint32_t p) const { return p == kSource ? source_ : grid().node(p); }
    double anchor_dist(std::uint32_t p) const { return p == kSource ? 0.0 : dist_[p]; }

    std::shared_ptr<const MetricGraph> graph_;
    Point source_;
    std::vector<double> dist_;
    std::vector<std::uint32_t> parent_;
};

GeodesicField build_field(const Density& d, const Point& source, const Resolution& res);

/// Field from the shared graph cache, sourced at the origin. Repeated calls
/// with the same density and resolution return the same object.
std::shared_ptr<const GeodesicField> origin_field(const Density& d, const Resolution& res);

}  // namespace conflab
