#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conflab/point.hpp"

namespace conflab {

/// Discretization parameters of a geodesic field.
struct Resolution {
    std::string name = "default";
    double h = 0.02;            ///< base cell size away from the boundary
    int k0 = 4;                 ///< first boundary truncation level
    int K = 10;                 ///< last truncation level; grid reaches radius 1 - 2^(-K)
    int whitney_cells = 4;      ///< cell size <= (1 - |x|) / whitney_cells
    bool extended_stencil = true;
    std::size_t node_budget = 2'000'000;

    /// "coarse" (h = 0.05, K = 8), "default" (h = 0.02, K = 10), "fine" (h = 0.01, K = 12).
    static Resolution preset(std::string_view name);

    /// Connection radius in units of the local cell size.
    double stencil_reach(int dim) const;

    /// Parameters actually used for dimension `dim`. Planar grids use the
    /// preset as is. For n = 3 an isotropic Whitney-scale layout grows like
    /// 4^K per shell, so cells are allowed up to (1 - |x|), h is multiplied
    /// by 2.5, K drops by 3 (at most 8) and truncation starts at k0 = 2.
    Resolution for_dim(int dim) const;
};

/// Nodes on concentric shells (circles for n = 2, spheres for n = 3) around
/// the origin, plus the origin itself.
///
/// Shell radii subdivide each dyadic annulus [1 - 2^(1-k), 1 - 2^(-k)] into
/// equal steps no larger than min(h, 2^(-k)/whitney_cells), so the truncation
/// radii 1 - 2^(-k) are shells and the cell size tracks (1 - |x|). Each shell
/// carries an angular layout with spacing about equal to its radial step:
/// equally spaced angles starting at 0 (count a multiple of 4) for n = 2, and
/// latitude bands with per-band azimuth counts for n = 3.
///
/// Nodes a and b are adjacent when |a - b| <= reach * max(step_a, step_b).
/// The grid is immutable; share it through std::shared_ptr.
class ShellGrid {
public:
    ShellGrid(int dim, const Resolution& res);

    /// Process-wide cache keyed by dimension and resolution parameters.
    static std::shared_ptr<const ShellGrid> shared(int dim, const Resolution& res);

    /// Node count the resolution would produce, without building anything.
    static std::size_t estimate_nodes(int dim, const Resolution& res);

    int dim() const { return dim_; }
    const Resolution& resolution() const { return res_; }
    std::size_t size() const { return nodes_.size(); }
    const Point& node(std::size_t i) const { return nodes_[i]; }
    std::span<const Point> nodes() const { return nodes_; }

    int shell_count() const { return static_cast<int>(radii_.size()); }
    int shell_of(std::size_t i) const { return shell_of_[i]; }
    double shell_radius(int j) const { return radii_[static_cast<std::size_t>(j)]; }
    double shell_step(int j) const { return steps_[static_cast<std::size_t>(j)]; }
    std::size_t shell_begin(int j) const { return offsets_[static_cast<std::size_t>(j)]; }
    std::size_t shell_end(int j) const { return offsets_[static_cast<std::size_t>(j) + 1]; }
    /// Shell whose radius is exactly 1 - 2^(-k), 1 <= k <= K.
    int shell_at_level(int k) const;
    double outer_radius() const { return radii_.back(); }
    /// Index of the shell with radius closest to r.
    int nearest_shell(double r) const;
    /// Cell size near radius r.
    double local_step(double r) const;

    /// Solid-angle weight of node i within its shell (sums to the sphere area).
    double angular_weight(std::size_t i) const { return angular_weight_[i]; }
    /// Volume of the cell represented by node i.
    double cell_volume(std::size_t i) const;

    std::span<const std::uint32_t> neighbors(std::size_t i) const {
        return {adj_.data() + adj_offsets_[i], adj_.data() + adj_offsets_[i + 1]};
    }
    std::size_t adjacency_size() const { return adj_.size(); }

    /// Appends every node within euclidean distance `radius` of y.
    void nodes_near(const Point& y, double radius, std::vector<std::uint32_t>& out) const;
    /// Appends nodes of shell j whose direction is within angle alpha of u
    /// (a superset filtered only by layout, not by exact angle).
    void shell_window(int j, const Point& u, double alpha, std::vector<std::uint32_t>& out) const;

private:
    struct Band {
        double theta = 0.0;
        std::uint32_t count = 0;
        double phase = 0.0;
        std::size_t first = 0;
    };

    void build_radii();
    void build_layout();
    void build_adjacency();

    int dim_;
    Resolution res_;
    std::vector<double> radii_;
    std::vector<double> steps_;
    std::vector<int> level_shell_;           // level k -> shell index
    std::vector<std::size_t> offsets_;       // node range per shell
    std::vector<std::size_t> band_offsets_;  // n = 3: band range per shell
    std::vector<Band> bands_;
    std::vector<Point> nodes_;
    std::vector<int> shell_of_;
    std::vector<double> angular_weight_;
    std::vector<std::size_t> adj_offsets_;
    std::vector<std::uint32_t> adj_;
};

}  // namespace conflab
