#include "conflab/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "conflab/errors.hpp"
#include "conflab/sphere_rule.hpp"

namespace conflab {

double radial_modulus_oracle(double sigma_e, double r, int n) {
    if (n != 2 && n != 3) throw ValidationError("dimension must be 2 or 3");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radial modulus needs 0 < r < 1");
    if (!(sigma_e > 0.0 && sigma_e <= sphere_area(n) * (1.0 + 1e-12)))
        throw DomainError("sigma(E) must lie in (0, sigma(S^(n-1))]");
    return sigma_e * std::pow(std::log(1.0 / r), 1 - n);
}

PolarCells::PolarCells(int dim, double r_inner, double h, int angular_cells, double theta_max) : dim_(dim) {
    if (dim != 2 && dim != 3) throw ValidationError("dimension must be 2 or 3");
    if (!(r_inner > 0.0 && r_inner < 1.0)) throw DomainError("inner radius must lie in (0, 1)");
    if (!(h > 0.0) || angular_cells < 4) throw DomainError("cell sizes must be positive");
    const int m = std::max(1, static_cast<int>(std::ceil(std::log(1.0 / r_inner) / h - 1e-9)));
    const double q = std::pow(1.0 / r_inner, 1.0 / m);
    for (int i = 0; i < m; ++i) edges_.push_back(r_inner * std::pow(q, i));
    edges_.push_back(1.0);
    if (dim == 2) {
        directions_ = static_cast<std::size_t>(angular_cells);
        dtheta_ = 2.0 * std::numbers::pi / angular_cells;
    } else {
        const int nominal = std::max(2, angular_cells / 2);
        dtheta_ = std::numbers::pi / nominal;
        if (theta_max > 0.0 && theta_max < std::numbers::pi - dtheta_)
            dtheta_ = theta_max / std::ceil(theta_max / dtheta_);
        bands_ = static_cast<int>(std::ceil(std::numbers::pi / dtheta_ - 1e-9));
        azimuths_ = 2 * nominal;
        directions_ = static_cast<std::size_t>(bands_) * static_cast<std::size_t>(azimuths_);
    }
}

double PolarCells::volume(std::size_t c) const {
    const std::size_t bin = c / directions_;
    const double r0 = edges_[bin], r1 = edges_[bin + 1];
    if (dim_ == 2) return 0.5 * dtheta_ * (r1 * r1 - r0 * r0);
    const auto band = static_cast<int>((c % directions_) / static_cast<std::size_t>(azimuths_));
    const double hi = std::min(std::numbers::pi, (band + 1) * dtheta_);
    const double solid = (std::cos(band * dtheta_) - std::cos(hi)) * 2.0 * std::numbers::pi / azimuths_;
    return (r1 * r1 * r1 - r0 * r0 * r0) / 3.0 * solid;
}

long PolarCells::locate(const Point& x) const {
    const double r = x.norm();
    if (r < edges_.front()) return -1;
    long bin = static_cast<long>(std::upper_bound(edges_.begin(), edges_.end(), r) - edges_.begin()) - 1;
    bin = std::clamp(bin, 0L, static_cast<long>(radial_bins()) - 1);
    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t dir = 0;
    if (dim_ == 2) {
        double phi = std::atan2(x[1], x[0]);
        if (phi < 0.0) phi += two_pi;
        dir = std::min(static_cast<std::size_t>(phi / dtheta_), directions_ - 1);
    } else {
        // polar axis along e1, where the cap families are centred
        const double theta = std::acos(std::clamp(x[0] / r, -1.0, 1.0));
        double phi = std::atan2(x[2], x[1]);
        if (phi < 0.0) phi += two_pi;
        const auto band = std::min(static_cast<int>(theta / dtheta_), bands_ - 1);
        const auto az = std::min(static_cast<int>(phi / (two_pi / azimuths_)), azimuths_ - 1);
        dir = static_cast<std::size_t>(band) * static_cast<std::size_t>(azimuths_) + static_cast<std::size_t>(az);
    }
    return bin * static_cast<long>(directions_) + static_cast<long>(dir);
}

SolverConfig solver_for(const Resolution& res, int dim) {
    SolverConfig s;
    s.h = res.h;
    if (dim == 2)
        s.angular_cells = 8 * static_cast<int>(std::lround(2.0 * std::numbers::pi / (8.0 * res.h)));
    else
        s.angular_cells = std::max(8, static_cast<int>(std::lround(std::numbers::pi / (4.0 * res.h))));
    return s;
}

namespace {

using Row = std::vector<std::pair<std::uint32_t, double>>;

// Lengths of one curve inside the cells. Segments are split exactly at the
// radial edges; within a radial bin they are cut into pieces short in angle
// and each piece goes to the cell of its midpoint.
Row curve_row(const PolarCells& cells, const Curve& curve) {
    std::unordered_map<std::uint32_t, double> acc;
    const auto& edges = cells.radial_edges();
    for (std::size_t s = 1; s < curve.vertices.size(); ++s) {
        const Point a = curve.vertices[s - 1];
        const Point b = curve.vertices[s];
        const Point d = b - a;
        const double len = d.norm();
        if (len == 0.0) continue;
        std::vector<double> ts{0.0, 1.0};
        const double qa = d.norm2();
        const double qb = 2.0 * a.dot(d);
        for (double R : edges) {
            const double qc = a.norm2() - R * R;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)})
                if (t > 0.0 && t < 1.0) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double t0 = ts[i - 1], t1 = ts[i];
            if (t1 - t0 <= 0.0) continue;
            const Point p0 = a + d * t0, p1 = a + d * t1;
            double turn = 0.0;
            if (p0.norm() > 0.0 && p1.norm() > 0.0) turn = angle_between(p0, p1);
            const int m = std::max(1, static_cast<int>(std::ceil(turn / (cells.angular_step() / 16.0))));
            for (int j = 0; j < m; ++j) {
                const double tm = t0 + (t1 - t0) * (j + 0.5) / m;
                const long c = cells.locate(a + d * tm);
                if (c >= 0) acc[static_cast<std::uint32_t>(c)] += len * (t1 - t0) / m;
            }
        }
    }
    Row row(acc.begin(), acc.end());
    std::sort(row.begin(), row.end());
    return row;
}

struct Program {
    int n = 2;
    std::vector<Row> rows;      // touched-cell indices
    std::vector<double> vol;    // per touched cell
    std::vector<std::uint32_t> cell_of;

    std::vector<double> lengths(const std::vector<double>& rho) const {
        std::vector<double> out(rows.size(), 0.0);
        for (std::size_t g = 0; g < rows.size(); ++g)
            for (const auto& [c, l] : rows[g]) out[g] += l * rho[c];
        return out;
    }
    double objective(const std::vector<double>& rho) const {
        double s = 0.0;
        for (std::size_t c = 0; c < vol.size(); ++c) s += vol[c] * std::pow(rho[c], n);
        return s;
    }
    // Rescales rho so that every curve has length >= 1; returns the objective.
    double certify(std::vector<double>& rho) const {
        const auto len = lengths(rho);
        const double m = *std::min_element(len.begin(), len.end());
        if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
        double scale = 1.0 / m;
        for (int guard = 0; guard < 8; ++guard) {
            std::vector<double> trial(rho.size());
            for (std::size_t c = 0; c < rho.size(); ++c) trial[c] = rho[c] * scale;
            const auto tl = lengths(trial);
            if (*std::min_element(tl.begin(), tl.end()) >= 1.0) {
                rho = std::move(trial);
                return objective(rho);
            }
            scale *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
        }
        return std::numeric_limits<double>::infinity();
    }
};

struct Candidate {
    double upper = std::numeric_limits<double>::infinity();
    std::vector<double> rho;
};

void offer(const Program& prog, std::vector<double> rho, Candidate& best) {
    const double v = prog.certify(rho);
    if (v < best.upper) {
        best.upper = v;
        best.rho = std::move(rho);
    }
}

// Projected subgradient on max min_g a_g . y over {y >= 0, ||y||_n = 1},
// y_c = vol_c^(1/n) rho_c. The supergradient averages the active curves.
void solve_primal(const Program& prog, const SolverConfig& cfg, Candidate& best, int& iterations) {
    const std::size_t nc = prog.vol.size();
    const int n = prog.n;
    std::vector<double> wscale(nc);
    for (std::size_t c = 0; c < nc; ++c) wscale[c] = std::pow(prog.vol[c], 1.0 / n);
    auto normalize = [&](std::vector<double>& y) {
        double s = 0.0;
        for (double v : y) s += std::pow(v, n);
        s = std::pow(s, 1.0 / n);
        if (s > 0.0)
            for (double& v : y) v /= s;
    };
    auto to_rho = [&](const std::vector<double>& y) {
        std::vector<double> rho(nc);
        for (std::size_t c = 0; c < nc; ++c) rho[c] = y[c] / wscale[c];
        return rho;
    };

    std::vector<double> y(nc, 0.0);
    for (const Row& row : prog.rows)
        for (const auto& [c, l] : row) y[c] += l / wscale[c];
    normalize(y);
    std::vector<double> g(nc);
    for (int k = 1; k <= cfg.iterations; ++k) {
        const auto len = prog.lengths(to_rho(y));
        const double m = *std::min_element(len.begin(), len.end());
        std::fill(g.begin(), g.end(), 0.0);
        int active = 0;
        for (std::size_t r = 0; r < len.size(); ++r) {
            if (len[r] > m * (1.0 + 1e-3)) continue;
            ++active;
            for (const auto& [c, l] : prog.rows[r]) g[c] += l / wscale[c];
        }
        double gn = 0.0;
        for (double& v : g) {
            v /= active;
            gn += v * v;
        }
        gn = std::sqrt(gn);
        if (!(gn > 0.0)) break;
        const double t = cfg.step / std::sqrt(static_cast<double>(k));
        for (std::size_t c = 0; c < nc; ++c) y[c] = std::max(0.0, y[c] + t * g[c] / gn);
        normalize(y);
        if (k % cfg.rescale_every == 0 || k == cfg.iterations) offer(prog, to_rho(y), best);
        iterations = k;
    }
}

// Projected gradient ascent (accelerated, with backtracking) on the dual
//   D(lambda) = sum lambda - (n-1)/n sum_c g_c rho_c,  g = A^T lambda,
//   rho_c = (g_c / (n vol_c))^(1/(n-1)).
// Weak duality makes D a lower bound; rho(lambda) rescaled is an upper bound.
double solve_dual(const Program& prog, const SolverConfig& cfg, Candidate& best) {
    const std::size_t m = prog.rows.size();
    const std::size_t nc = prog.vol.size();
    const int n = prog.n;
    auto rho_of = [&](const std::vector<double>& lam) {
        std::vector<double> g(nc, 0.0);
        for (std::size_t r = 0; r < m; ++r)
            for (const auto& [c, l] : prog.rows[r]) g[c] += lam[r] * l;
        std::vector<double> rho(nc);
        for (std::size_t c = 0; c < nc; ++c) rho[c] = std::pow(g[c] / (n * prog.vol[c]), 1.0 / (n - 1));
        return std::pair{g, rho};
    };
    auto value = [&](const std::vector<double>& lam, std::vector<double>* grad, std::vector<double>* rho_out) {
        auto [g, rho] = rho_of(lam);
        double v = 0.0;
        for (double x : lam) v += x;
        double s = 0.0;
        for (std::size_t c = 0; c < nc; ++c) s += g[c] * rho[c];
        v -= (n - 1.0) / n * s;
        if (grad) {
            const auto len = prog.lengths(rho);
            grad->resize(m);
            for (std::size_t r = 0; r < m; ++r) (*grad)[r] = 1.0 - len[r];
        }
        if (rho_out) *rho_out = std::move(rho);
        return v;
    };

    std::vector<double> lam(m, 0.0), yk = lam, grad, rho;
    double eta = 1.0;
    double best_lower = 0.0;
    double tk = 1.0;
    for (int k = 1; k <= cfg.iterations; ++k) {
        const double fy = value(yk, &grad, nullptr);
        std::vector<double> next(m);
        double fnext = 0.0;
        for (int bt = 0; bt < 60; ++bt) {
            double quad = 0.0, lin = 0.0;
            for (std::size_t r = 0; r < m; ++r) {
                next[r] = std::max(0.0, yk[r] + eta * grad[r]);
                const double dv = next[r] - yk[r];
                lin += grad[r] * dv;
                quad += dv * dv;
            }
            fnext = value(next, nullptr, &rho);
            if (fnext >= fy + lin - quad / (2.0 * eta) - 1e-15 * std::abs(fy)) break;
            eta *= 0.5;
        }
        const double fprev = value(lam, nullptr, nullptr);
        const double tnext = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        if (fnext < fprev) {
            // restart the momentum
            yk = lam;
            tk = 1.0;
            eta *= 2.0;
            continue;
        }
        for (std::size_t r = 0; r < m; ++r) yk[r] = next[r] + (tk - 1.0) / tnext * (next[r] - lam[r]);
        tk = tnext;
        lam = std::move(next);
        best_lower = std::max(best_lower, fnext);
        eta *= 1.25;
        if (k % 10 == 0 || k == cfg.iterations) {
            offer(prog, rho, best);
            if (best.upper - best_lower <= 1e-6 * best.upper) break;
        }
    }
    offer(prog, rho, best);
    return best_lower;
}

}  // namespace

ModulusResult numerical_modulus(const CurveFamily& family, const SolverConfig& solver) {
    if (family.curves.empty()) throw ValidationError("curve family is empty");
    if (solver.iterations < 1 || solver.rescale_every < 1) throw DomainError("solver budget must be positive");
    const int n = family.dim;
    double r_inner = 1.0;
    for (const Curve& c : family.curves) {
        c.validate();
        if (c.dim() != n) throw ValidationError("curve dimension differs from the family");
        for (std::size_t i = 1; i < c.vertices.size(); ++i) {
            // distance from the origin to the segment
            const Point a = c.vertices[i - 1], d = c.vertices[i] - a;
            const double t = std::clamp(-a.dot(d) / d.norm2(), 0.0, 1.0);
            r_inner = std::min(r_inner, (a + d * t).norm());
        }
    }
    r_inner = std::clamp(r_inner * (1.0 - 1e-9), 1e-3, 0.999);
    double theta_max = 0.0;
    if (n == 3)
        for (const Curve& c : family.curves)
            for (const Point& v : c.vertices)
                if (v.norm() > 0.0) theta_max = std::max(theta_max, angle_between(v, Point::e1(3)));
    const double h = solver.h > 0.0 ? solver.h : 0.02;
    const int ang = solver.angular_cells > 0 ? solver.angular_cells : solver_for(Resolution::preset("default"), n).angular_cells;
    const PolarCells cells(n, r_inner, h, ang, theta_max * (1.0 + 1e-9));

    Program prog;
    prog.n = n;
    std::unordered_map<std::uint32_t, std::uint32_t> index;
    for (std::size_t g = 0; g < family.curves.size(); ++g) {
        Row row = curve_row(cells, family.curves[g]);
        double total = 0.0;
        for (auto& [c, l] : row) {
            auto [it, fresh] = index.try_emplace(c, static_cast<std::uint32_t>(prog.vol.size()));
            if (fresh) {
                prog.vol.push_back(cells.volume(c));
                prog.cell_of.push_back(c);
            }
            c = it->second;
            total += l;
        }
        if (!(total > 0.0))
            throw ValidationError("curve " + std::to_string(g) + " has no length inside the modulus cells (infeasible)");
        prog.rows.push_back(std::move(row));
    }

    ModulusResult out;
    out.curves = family.curves.size();
    out.cells = cells.size();
    out.touched_cells = prog.vol.size();

    Candidate primal;
    solve_primal(prog, solver, primal, out.iterations);
    out.primal_upper = primal.upper;
    Candidate best = primal;
    if (solver.dual) out.lower = solve_dual(prog, solver, best);
    if (!std::isfinite(best.upper)) throw NumericalError("modulus solver found no admissible density");

    out.upper = best.upper;
    out.certificate.assign(cells.size(), 0.0);
    for (std::size_t c = 0; c < best.rho.size(); ++c) out.certificate[prog.cell_of[c]] = best.rho[c];
    const auto len = prog.lengths(best.rho);
    out.min_curve_length = *std::min_element(len.begin(), len.end());
    out.converged = solver.dual && out.upper - out.lower <= solver.gap_tol * out.upper;
    if (family.curves.size() == 1)
        out.warnings.push_back("single-curve family: the continuum modulus is 0, the value only reflects the cell size");
    if (!out.converged) out.warnings.push_back("iteration budget exhausted before the duality gap closed");
    return out;
}

}  // namespace conflab
