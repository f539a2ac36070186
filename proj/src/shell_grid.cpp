#include "conflab/shell_grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

constexpr double kPi = std::numbers::pi;

struct ShellPlan {
    std::vector<double> radii;
    std::vector<double> steps;
    std::vector<int> level_shell;
};

ShellPlan plan_shells(const Resolution& res) {
    if (!(res.h > 0.0) || res.K < 1 || res.K > 40 || res.whitney_cells < 1)
        throw DomainError("invalid resolution: need h > 0, 1 <= K <= 40, whitney_cells >= 1");
    ShellPlan p;
    p.radii.push_back(0.0);
    p.steps.push_back(0.0);
    p.level_shell.assign(static_cast<std::size_t>(res.K) + 1, 0);
    for (int k = 1; k <= res.K; ++k) {
        const double lo = 1.0 - std::ldexp(1.0, 1 - k);
        const double hi = 1.0 - std::ldexp(1.0, -k);
        const double width = std::ldexp(1.0, -k);
        const double target = std::min(res.h, width / res.whitney_cells);
        const int m = std::max(1, static_cast<int>(std::ceil(width / target - 1e-9)));
        const double step = width / m;
        for (int i = 1; i <= m; ++i) {
            p.radii.push_back(i == m ? hi : lo + i * step);
            p.steps.push_back(step);
        }
        p.level_shell[static_cast<std::size_t>(k)] = static_cast<int>(p.radii.size()) - 1;
    }
    p.steps[0] = p.steps[1];
    return p;
}

std::size_t ring_count(double r, double a, std::size_t prev) {
    const auto n = static_cast<std::size_t>(4.0 * std::ceil(2.0 * kPi * r / (4.0 * a) - 1e-9));
    return std::max({n, prev, std::size_t{8}});
}

std::size_t band_count(double r, double a) {
    auto nb = static_cast<std::size_t>(std::ceil(kPi * r / a - 1e-9));
    nb = std::max<std::size_t>(nb, 3);
    if (nb % 2 == 0) ++nb;
    return nb;
}

std::size_t azimuth_count(double r, double a, double theta) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 * kPi * r * std::sin(theta) / a - 1e-9)));
}

long floor_div_index(double x) { return static_cast<long>(std::floor(x)); }

}  // namespace

Resolution Resolution::preset(std::string_view name) {
    Resolution r;
    r.name = std::string(name);
    if (name == "coarse") {
        r.h = 0.05;
        r.K = 8;
    } else if (name == "default") {
        r.h = 0.02;
        r.K = 10;
    } else if (name == "fine") {
        r.h = 0.01;
        r.K = 12;
    } else {
        throw ValidationError("unknown resolution preset '" + std::string(name) + "' (coarse, default, fine)");
    }
    return r;
}

double Resolution::stencil_reach(int dim) const {
    if (!extended_stencil) return 1.5;
    return dim == 2 ? 2.3 : 1.6;
}

Resolution Resolution::for_dim(int dim) const {
    Resolution r = *this;
    if (dim == 3) {
        r.h = 2.5 * h;
        r.whitney_cells = 1;
        r.K = std::max(2, std::min(K - 3, 8));
        r.k0 = std::min(k0, 2);
    }
    return r;
}

std::size_t ShellGrid::estimate_nodes(int dim, const Resolution& res_in) {
    const Resolution res = res_in.for_dim(dim);
    const ShellPlan p = plan_shells(res);
    std::size_t total = 1;
    std::size_t prev = 0;
    for (std::size_t j = 1; j < p.radii.size(); ++j) {
        if (dim == 2) {
            prev = ring_count(p.radii[j], p.steps[j], prev);
            total += prev;
        } else {
            const std::size_t nb = band_count(p.radii[j], p.steps[j]);
            for (std::size_t b = 0; b < nb; ++b)
                total += azimuth_count(p.radii[j], p.steps[j], (static_cast<double>(b) + 0.5) * kPi / static_cast<double>(nb));
        }
    }
    return total;
}

ShellGrid::ShellGrid(int dim, const Resolution& res) : dim_(dim), res_(res.for_dim(dim)) {
    if (dim != 2 && dim != 3) throw ValidationError("shell grid dimension must be 2 or 3");
    const std::size_t estimate = estimate_nodes(dim, res);
    if (estimate > res.node_budget)
        throw CapacityError("resolution '" + res.name + "' needs " + std::to_string(estimate) +
                            " nodes, over the node budget of " + std::to_string(res.node_budget));
    build_radii();
    build_layout();
    build_adjacency();
}

std::shared_ptr<const ShellGrid> ShellGrid::shared(int dim, const Resolution& res) {
    using Key = std::tuple<int, double, int, int, bool>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const ShellGrid>> cache;
    const Key key{dim, res.h, res.K, res.whitney_cells, res.extended_stencil};
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
        // same discretization, possibly a different budget
        if (it->second->size() > res.node_budget)
            throw CapacityError("resolution '" + res.name + "' needs " + std::to_string(it->second->size()) +
                                " nodes, over the node budget of " + std::to_string(res.node_budget));
        return it->second;
    }
    // fine grids are large; keep only a few alive
    if (cache.size() >= 4) cache.erase(cache.begin());
    auto grid = std::make_shared<const ShellGrid>(dim, res);
    cache.emplace(key, grid);
    return grid;
}

void ShellGrid::build_radii() {
    ShellPlan p = plan_shells(res_);
    radii_ = std::move(p.radii);
    steps_ = std::move(p.steps);
    level_shell_ = std::move(p.level_shell);
}

void ShellGrid::build_layout() {
    const std::size_t shells = radii_.size();
    offsets_.assign(shells + 1, 0);
    band_offsets_.assign(shells + 1, 0);
    nodes_.push_back(Point::zero(dim_));
    shell_of_.push_back(0);
    angular_weight_.push_back(dim_ == 2 ? 2.0 * kPi : 4.0 * kPi);
    offsets_[1] = 1;

    std::size_t prev = 0;
    for (std::size_t j = 1; j < shells; ++j) {
        const double r = radii_[j];
        const double a = steps_[j];
        if (dim_ == 2) {
            const std::size_t n = ring_count(r, a, prev);
            prev = n;
            for (std::size_t i = 0; i < n; ++i) {
                nodes_.push_back(unit_circle(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)) * r);
                shell_of_.push_back(static_cast<int>(j));
                angular_weight_.push_back(2.0 * kPi / static_cast<double>(n));
            }
        } else {
            const std::size_t nb = band_count(r, a);
            const std::size_t mid = nb / 2;
            band_offsets_[j] = bands_.size();
            for (std::size_t b = 0; b < nb; ++b) {
                Band band;
                band.theta = (static_cast<double>(b) + 0.5) * kPi / static_cast<double>(nb);
                band.count = static_cast<std::uint32_t>(azimuth_count(r, a, band.theta));
                band.phase = ((b > mid ? b - mid : mid - b) % 2 == 1) ? 0.5 : 0.0;
                band.first = nodes_.size();
                const double th_lo = static_cast<double>(b) * kPi / static_cast<double>(nb);
                const double th_hi = static_cast<double>(b + 1) * kPi / static_cast<double>(nb);
                const double w = 2.0 * kPi * (std::cos(th_lo) - std::cos(th_hi)) / band.count;
                for (std::uint32_t l = 0; l < band.count; ++l) {
                    const double phi = 2.0 * kPi * (l + band.phase) / band.count;
                    nodes_.push_back(unit_sphere(band.theta, phi) * r);
                    shell_of_.push_back(static_cast<int>(j));
                    angular_weight_.push_back(w);
                }
                bands_.push_back(band);
            }
            band_offsets_[j + 1] = bands_.size();
        }
        offsets_[j + 1] = nodes_.size();
    }
}

int ShellGrid::shell_at_level(int k) const {
    if (k < 1 || k > res_.K)
        throw DomainError("truncation level " + std::to_string(k) + " outside 1.." + std::to_string(res_.K));
    return level_shell_[static_cast<std::size_t>(k)];
}

int ShellGrid::nearest_shell(double r) const {
    auto it = std::lower_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.end()) return shell_count() - 1;
    const auto j = static_cast<int>(it - radii_.begin());
    if (j > 0 && r - radii_[static_cast<std::size_t>(j - 1)] < *it - r) return j - 1;
    return j;
}

double ShellGrid::local_step(double r) const { return steps_[static_cast<std::size_t>(nearest_shell(r))]; }

double ShellGrid::cell_volume(std::size_t i) const {
    const auto j = static_cast<std::size_t>(shell_of_[i]);
    if (j == 0) {
        const double rc = 0.5 * radii_[1];
        return dim_ == 2 ? kPi * rc * rc : 4.0 / 3.0 * kPi * rc * rc * rc;
    }
    const double r_in = 0.5 * (radii_[j - 1] + radii_[j]);
    const double r_out = j + 1 < radii_.size() ? 0.5 * (radii_[j] + radii_[j + 1]) : radii_[j] + 0.5 * steps_[j];
    if (dim_ == 2) return 0.5 * (r_out * r_out - r_in * r_in) * angular_weight_[i];
    return (r_out * r_out * r_out - r_in * r_in * r_in) / 3.0 * angular_weight_[i];
}

void ShellGrid::shell_window(int j, const Point& u, double alpha, std::vector<std::uint32_t>& out) const {
    const auto js = static_cast<std::size_t>(j);
    if (j == 0) {
        out.push_back(0);
        return;
    }
    const std::size_t first = offsets_[js];
    const std::size_t last = offsets_[js + 1];
    if (alpha >= kPi) {
        for (std::size_t i = first; i < last; ++i) out.push_back(static_cast<std::uint32_t>(i));
        return;
    }
    if (dim_ == 2) {
        const auto n = static_cast<long>(last - first);
        const double phi = std::atan2(u[1], u[0]);
        const long lo = floor_div_index((phi - alpha) / (2.0 * kPi) * static_cast<double>(n));
        const long hi = static_cast<long>(std::ceil((phi + alpha) / (2.0 * kPi) * static_cast<double>(n)));
        if (hi - lo + 1 >= n) {
            for (std::size_t i = first; i < last; ++i) out.push_back(static_cast<std::uint32_t>(i));
            return;
        }
        for (long i = lo; i <= hi; ++i) {
            const long m = ((i % n) + n) % n;
            out.push_back(static_cast<std::uint32_t>(first + static_cast<std::size_t>(m)));
        }
        return;
    }

    const std::size_t b0 = band_offsets_[js];
    const auto nb = static_cast<long>(band_offsets_[js + 1] - b0);
    const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
    const double phi = std::atan2(u[1], u[0]);
    const long blo = std::max(0L, floor_div_index((theta - alpha) * static_cast<double>(nb) / kPi - 0.5));
    const long bhi = std::min(nb - 1, static_cast<long>(std::ceil((theta + alpha) * static_cast<double>(nb) / kPi - 0.5)));
    const double sa = std::sin(0.5 * alpha);
    for (long b = blo; b <= bhi; ++b) {
        const Band& band = bands_[b0 + static_cast<std::size_t>(b)];
        if (std::abs(band.theta - theta) > alpha) continue;
        const double st = std::sin(theta) * std::sin(band.theta);
        const auto n = static_cast<long>(band.count);
        bool all = st <= 0.0;
        double dphi = kPi;
        if (!all) {
            const double rhs = sa / std::sqrt(st);
            if (rhs >= 1.0)
                all = true;
            else
                dphi = 2.0 * std::asin(rhs);
        }
        if (!all) {
            const long lo = floor_div_index((phi - dphi) / (2.0 * kPi) * static_cast<double>(n) - band.phase);
            const long hi = static_cast<long>(std::ceil((phi + dphi) / (2.0 * kPi) * static_cast<double>(n) - band.phase));
            if (hi - lo + 1 < n) {
                for (long l = lo; l <= hi; ++l) {
                    const long m = ((l % n) + n) % n;
                    out.push_back(static_cast<std::uint32_t>(band.first + static_cast<std::size_t>(m)));
                }
                continue;
            }
        }
        for (long l = 0; l < n; ++l) out.push_back(static_cast<std::uint32_t>(band.first + static_cast<std::size_t>(l)));
    }
}

void ShellGrid::nodes_near(const Point& y, double radius, std::vector<std::uint32_t>& out) const {
    const double ry = y.norm();
    auto lo = std::lower_bound(radii_.begin(), radii_.end(), ry - radius);
    auto hi = std::upper_bound(radii_.begin(), radii_.end(), ry + radius);
    std::vector<std::uint32_t> cand;
    for (auto it = lo; it != hi; ++it) {
        const auto j = static_cast<int>(it - radii_.begin());
        const double rj = *it;
        cand.clear();
        if (j == 0) {
            cand.push_back(0);
        } else if (ry == 0.0) {
            shell_window(j, Point::e1(dim_), kPi, cand);
        } else {
            const double s = radius / (2.0 * std::sqrt(rj * ry));
            const double alpha = s >= 1.0 ? kPi : 2.0 * std::asin(s);
            shell_window(j, y / ry, alpha, cand);
        }
        for (std::uint32_t c : cand)
            if (distance(nodes_[c], y) <= radius) out.push_back(c);
    }
}

void ShellGrid::build_adjacency() {
    const double reach = res_.stencil_reach(dim_);
    const double h = *std::max_element(steps_.begin(), steps_.end());
    adj_offsets_.assign(nodes_.size() + 1, 0);
    std::vector<std::vector<std::uint32_t>> lists(nodes_.size());
    std::vector<std::uint32_t> cand;
    for (std::size_t a = 0; a < nodes_.size(); ++a) {
        const Point& xa = nodes_[a];
        const double ra = radii_[static_cast<std::size_t>(shell_of_[a])];
        const double sa = steps_[static_cast<std::size_t>(shell_of_[a])];
        const double span = reach * std::max(sa, h);
        auto lo = std::lower_bound(radii_.begin(), radii_.end(), ra - span);
        auto hi = std::upper_bound(radii_.begin(), radii_.end(), ra + span);
        auto& list = lists[a];
        for (auto it = lo; it != hi; ++it) {
            const auto j = static_cast<int>(it - radii_.begin());
            const double rj = *it;
            const double radius = reach * std::max(sa, steps_[static_cast<std::size_t>(j)]);
            if (std::abs(rj - ra) > radius) continue;
            cand.clear();
            if (j == 0 || ra == 0.0) {
                shell_window(j, Point::e1(dim_), kPi, cand);
            } else {
                const double s = radius / (2.0 * std::sqrt(rj * ra));
                const double alpha = s >= 1.0 ? kPi : 2.0 * std::asin(s);
                shell_window(j, xa / ra, alpha, cand);
            }
            for (std::uint32_t b : cand)
                if (b != a && distance(nodes_[b], xa) <= radius) list.push_back(b);
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        adj_offsets_[a + 1] = adj_offsets_[a] + list.size();
    }
    adj_.reserve(adj_offsets_.back());
    for (auto& list : lists) {
        adj_.insert(adj_.end(), list.begin(), list.end());
        std::vector<std::uint32_t>().swap(list);
    }
}

}  // namespace conflab
