#include "conflab/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <ostream>

#include "conflab/curve_family.hpp"
#include "conflab/functionals.hpp"
#include "conflab/harnack.hpp"
#include "conflab/metric_checks.hpp"
#include "conflab/modulus.hpp"
#include "conflab/report.hpp"
#include "conflab/sphere_rule.hpp"
#include "conflab/stolz.hpp"

namespace conflab {

namespace {

using nlohmann::json;

std::vector<Density> densities(const ExperimentConfig& cfg, const std::string& key = "density") {
    std::vector<Density> out;
    for (const std::string& id : cfg.ids(key)) {
        try {
            out.push_back(Density::from_id(id));
        } catch (const Error& e) {
            throw ConfigError("key '" + key + "': " + e.what());
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is empty");
    return out;
}

std::vector<GrowthFunction> growths(const ExperimentConfig& cfg, const std::string& key = "psi") {
    std::vector<GrowthFunction> out;
    for (const std::string& id : cfg.ids(key)) {
        try {
            out.push_back(GrowthFunction::from_id(id));
        } catch (const Error& e) {
            throw ConfigError("key '" + key + "': " + e.what());
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is empty");
    return out;
}

Point make_point(const std::vector<double>& c, int dim) {
    if (static_cast<int>(c.size()) > dim) throw ConfigError("point has more coordinates than the density dimension");
    return dim == 2 ? Point(c[0], c[1]) : Point(c[0], c[1], c.size() > 2 ? c[2] : 0.0);
}

// Seed for the i-th sampler of a run (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t i) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string file_tag(std::string s) {
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
    return s;
}

json header(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = kReportSchema;
    j["catalog_version"] = kCatalogVersion;
    j["subcommand"] = cfg.subcommand();
    j["config"] = cfg.to_json();
    return j;
}

// ---------------------------------------------------------------- characterize

void run_characterize(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    std::vector<double> deltas = cfg.text("deltas").empty() ? default_delta_scan() : cfg.reals("deltas");
    for (double d : deltas)
        if (!(d > 0.0)) throw ConfigError("key 'deltas': values must be positive");
    json cells = json::array();
    std::size_t total = 0, undecided = 0, inconsistent = 0;
    for (const Density& d : densities(cfg)) {
        const auto profiles = field_profiles(d, res);
        for (const GrowthFunction& g : growths(cfg)) {
            const Characterization c = characterize(*profiles, g, deltas);
            json cell;
            cell["density"] = d.id();
            cell["psi"] = g.id();
            cell["consistent"] = c.consistent;
            cell["overall"] = std::string(to_string(c.overall));
            cell["inconclusive"] = c.inconclusive;
            json kinds = json::array();
            for (const KindSummary& ks : c.kinds) {
                json k;
                k["kind"] = std::string(to_string(ks.kind));
                k["verdict"] = std::string(to_string(ks.verdict));
                k["best_delta"] = ks.best_delta ? json(*ks.best_delta) : json(nullptr);
                json reps = json::array();
                for (const AnalysisReport& r : ks.reports) reps.push_back(to_json(r));
                k["reports"] = reps;
                kinds.push_back(k);
                const AnalysisReport& shown = ks.reports.front();
                out.csv.push_back({"characterize_" + file_tag(d.id()) + "_" + file_tag(g.id()) + "_" +
                                       std::string(to_string(ks.kind)) + ".csv",
                                   csv_series(shown.truncations)});
            }
            cell["kinds"] = kinds;
            cells.push_back(cell);
            total += c.kinds.size();
            undecided += c.inconclusive.size();
            if (!c.consistent) ++inconsistent;
            std::string line = d.id() + " x " + g.id() + ": " + std::string(to_string(c.overall));
            if (!c.consistent) line += " (INCONSISTENT)";
            if (!c.inconclusive.empty()) line += " (" + std::to_string(c.inconclusive.size()) + " inconclusive)";
            out.summary.push_back(line);
        }
    }
    out.report["cells"] = cells;
    out.report["inconclusive_fraction"] = total ? static_cast<double>(undecided) / total : 0.0;
    out.report["inconsistent_cells"] = inconsistent;
    if (inconsistent) out.exit_code = kExitViolation;
}

// ---------------------------------------------------------------- energy

void run_energy(const ExperimentConfig& cfg, RunResult& out) {
    const std::string functional = cfg.text("functional");
    if (functional != "energy" && functional != "radial_p")
        throw ConfigError("key 'functional': '" + functional + "' is not one of energy, radial_p");
    const Resolution res = Resolution::preset(cfg.preset());
    const std::vector<double> ps = cfg.reals("p_list");
    if (ps.empty()) throw ConfigError("key 'p_list' is empty");
    json rows = json::array();
    for (const Density& d : densities(cfg)) {
        const auto profiles = field_profiles(d, res);
        for (double p : ps) {
            if (!(p > 0.0)) throw ConfigError("key 'p_list': exponents must be positive");
            const AnalysisReport r = functional == "energy" ? energy_functional(d, p) : radial_p_functional(d, p);
            // the boundary characterization with psi = t^p must give the same verdict
            const Characterization c = characterize(*profiles, GrowthFunction::power(p), {1.0});
            const bool agree = r.verdict() == Verdict::inconclusive || c.overall == Verdict::inconclusive ||
                               r.verdict() == c.overall;
            json row;
            row["density"] = d.id();
            row["p"] = p;
            row["report"] = to_json(r);
            row["characterize_verdict"] = std::string(to_string(c.overall));
            row["agree"] = agree;
            rows.push_back(row);
            out.csv.push_back({"energy_" + file_tag(d.id()) + "_p" + file_tag(fmt(p)) + ".csv", csv_series(r.truncations)});
            std::string line = d.id() + " p=" + fmt(p) + ": " + std::string(to_string(r.verdict()));
            if (r.limit.extrapolated) line += " (" + fmt(*r.limit.extrapolated) + ")";
            line += ", characterize " + std::string(to_string(c.overall));
            if (!agree) {
                line += " (DISAGREE)";
                out.exit_code = kExitViolation;
            }
            out.summary.push_back(line);
        }
    }
    out.report["results"] = rows;
}

// ---------------------------------------------------------------- hi-vg

void run_hi_vg(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    const int levels = cfg.integer("hi_levels");
    const int angles = cfg.integer("hi_angles");
    const std::vector<double> scales = cfg.reals("vg_scales");
    const double tol = cfg.real("vg_tolerance");
    json rows = json::array();
    for (const Density& d : densities(cfg)) {
        json row;
        row["density"] = d.id();
        const HarnackReport hi = check_hi(d, HarnackPlan::standard(d.dim(), levels, angles));
        row["hi"] = {{"a_emp", hi.a_emp},
                     {"claimed_a", hi.claimed_a ? json(*hi.claimed_a) : json(nullptr)},
                     {"pass", hi.pass},
                     {"worst_center", to_json(hi.worst_center)},
                     {"balls", hi.balls}};
        std::vector<Point> centers;
        for (const auto& c : cfg.points("vg_centers")) centers.push_back(make_point(c, d.dim()));
        const VgReport vg = check_vg(d, whitney_vg_samples(d, centers, scales), res, tol);
        json pairs = json::array();
        for (const VgPair& p : vg.pairs)
            pairs.push_back({{"x", to_json(p.x)}, {"r", p.r}, {"mu", p.mu}, {"b", p.b}, {"lower_bound_only", p.lower_bound_only}});
        row["vg"] = {{"b_emp", vg.b_emp},
                     {"claimed_b", vg.claimed ? json(*vg.claimed) : json(nullptr)},
                     {"pass", vg.pass ? json(*vg.pass) : json(nullptr)},
                     {"tolerance", vg.tolerance},
                     {"pairs", pairs},
                     {"warnings", vg.warnings}};
        rows.push_back(row);
        std::string line = d.id() + ": A_emp " + fmt(hi.a_emp) + (hi.pass ? " ok" : " FAIL") + ", B_emp " + fmt(vg.b_emp);
        if (vg.pass) line += *vg.pass ? " ok" : " FAIL";
        else line += " (no claim)";
        out.summary.push_back(line);
        if (!hi.pass || (vg.pass && !*vg.pass)) out.exit_code = kExitViolation;
    }
    out.report["results"] = rows;
}

// ---------------------------------------------------------------- gh

// Densities for which the radial segment to x is a geodesic.
bool radial_is_geodesic(const Density& d, const Point& x) {
    if (d.is_radial()) return true;
    if (d.kind() == Density::Kind::koebe) {
        // the pole direction and its opposite map to straight rays
        const Point e = d.boundary_hotspots().front();
        return angle_between(x, e) < 1e-12 || angle_between(x, e * -1.0) < 1e-12;
    }
    return false;
}

void run_gh(const ExperimentConfig& cfg, RunResult& out) {
    const int count = cfg.integer("count");
    const double tol = cfg.real("geodesic_tolerance");
    if (count < 1) throw ConfigError("key 'count' must be positive");
    json rows = json::array();
    double c_emp = 0.0;
    std::uint64_t sampler = 0;
    for (const Density& d : densities(cfg)) {
        for (const auto& coords : cfg.points("endpoints")) {
            const Point x = make_point(coords, d.dim());
            const bool boundary = std::abs(x.norm() - 1.0) <= 1e-12;
            CurveFamily fam;
            if (boundary && d.dim() == 2) {
                fam = perturbed_family(x, count / 2, derive_seed(cfg.seed(), sampler++));
                const CurveFamily spiral = spiral_family(x, count - count / 2, derive_seed(cfg.seed(), sampler++));
                fam.curves.insert(fam.curves.end(), spiral.curves.begin(), spiral.curves.end());
            } else {
                fam = perturbed_family(x, count, derive_seed(cfg.seed(), sampler++));
            }
            const GhReport g = gh_ratio(d, x, fam);
            const bool geodesic = radial_is_geodesic(d, x);
            const bool ok = !geodesic || g.ratio <= 1.0 + tol;
            c_emp = std::max(c_emp, g.ratio);
            rows.push_back({{"density", d.id()},
                            {"x", to_json(x)},
                            {"boundary", g.boundary},
                            {"radial_length", g.radial},
                            {"best_length", g.best},
                            {"best_index", g.best_index == g.candidates ? json(nullptr) : json(g.best_index)},
                            {"ratio", g.ratio},
                            {"candidates", g.candidates},
                            {"radial_geodesic", geodesic},
                            {"pass", ok}});
            out.summary.push_back(d.id() + " x=" + x.str() + ": ratio " + fmt(g.ratio) +
                                  (geodesic ? (ok ? " ok" : " FAIL") : ""));
            if (!ok) out.exit_code = kExitViolation;
        }
    }
    out.report["results"] = rows;
    out.report["c_emp"] = c_emp;
    out.summary.push_back("suite C_emp " + fmt(c_emp));
}

// ---------------------------------------------------------------- modulus

std::optional<double> family_oracle(const CatalogId& id, int n) {
    if (id.name == "radial") return radial_modulus_oracle(id.get("cap", std::numbers::pi), id.get("r", std::exp(-1.0)), n);
    if (id.name == "annulus") {
        const double r1 = id.get("r1", 0.2), r2 = id.get("r2", 0.2 * std::exp(1.0));
        return sphere_area(n) * std::pow(std::log(r2 / r1), 1 - n);
    }
    return std::nullopt;
}

void run_modulus(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    const double tol = cfg.text("tolerance").empty() ? (res.name == "fine" ? 0.02 : 0.05) : cfg.real("tolerance");
    json rows = json::array();
    for (const std::string& fid : cfg.ids("family")) {
        CurveFamily fam;
        try {
            fam = make_family(fid);
        } catch (const Error& e) {
            throw ConfigError(std::string("key 'family': ") + e.what());
        }
        SolverConfig solver = solver_for(res, fam.dim);
        solver.iterations = cfg.integer("iterations");
        const ModulusResult m = numerical_modulus(fam, solver);
        const auto oracle = family_oracle(CatalogId::parse(fid), fam.dim);
        json row{{"family", fam.descriptor},
                 {"curves", m.curves},
                 {"upper", m.upper},
                 {"lower", m.lower},
                 {"primal_upper", json_number(m.primal_upper)},
                 {"min_curve_length", m.min_curve_length},
                 {"cells", m.cells},
                 {"touched_cells", m.touched_cells},
                 {"converged", m.converged},
                 {"warnings", m.warnings}};
        std::string line = fam.descriptor + ": " + fmt(m.upper);
        if (oracle) {
            const double err = std::abs(m.upper - *oracle) / *oracle;
            row["oracle"] = *oracle;
            row["relative_error"] = err;
            row["pass"] = err <= tol;
            line += " vs oracle " + fmt(*oracle) + (err <= tol ? " ok" : " FAIL");
            if (err > tol) out.exit_code = kExitViolation;
        }
        rows.push_back(row);
        out.summary.push_back(line);
    }
    out.report["tolerance"] = tol;
    out.report["results"] = rows;
}

// ---------------------------------------------------------------- lemmas

json cap_suite(const Density& d, const Resolution& res, const ExperimentConfig& cfg, bool& ok,
               std::vector<std::string>& summary) {
    const auto base = origin_field(d, res);
    const double stability = cfg.real("stability");
    const int samples = cfg.integer("cap_samples");
    // the pole of the density if it has one, e1 otherwise
    const auto hot = d.boundary_hotspots();
    const Point u = hot.empty() ? Point::e1(d.dim()) : hot.front();
    json rows = json::array();
    std::vector<double> per_radius;
    double c_emp = 0.0;
    for (double rx : cfg.reals("cap_radii")) {
        if (!(rx > 0.0 && rx < 1.0)) throw ConfigError("key 'cap_radii': radii must lie in (0, 1)");
        const GeodesicField f = base->resourced(u * rx);
        double c_r = 0.0;
        for (double M : cfg.reals("cap_m")) {
            const CapMeasureReport r = cap_measure_test(f, M, samples);
            rows.push_back({{"x", to_json(r.x)},           {"M", M},
                            {"threshold", r.threshold},     {"half_angle", r.half_angle},
                            {"sigma_sx", r.sigma_sx},       {"samples", r.samples},
                            {"exceptional", r.exceptional}, {"inconclusive", r.inconclusive},
                            {"measure", r.measure},         {"bound_unit", r.bound_unit},
                            {"ratio", r.ratio}});
            c_r = std::max(c_r, r.ratio);
        }
        per_radius.push_back(c_r);
        c_emp = std::max(c_emp, c_r);
    }
    // stable: every radius needs a constant within the band around the suite constant
    bool stable = true;
    if (c_emp > 0.0)
        for (double c : per_radius) stable = stable && c >= (1.0 - stability) * c_emp;
    ok = ok && stable;
    summary.push_back(d.id() + " cap measure: C_emp " + fmt(c_emp) + (stable ? " stable" : " UNSTABLE"));
    return {{"c_emp", c_emp}, {"per_radius", per_radius}, {"stable", stable}, {"cases", rows}};
}

json separation_suite(const Density& d, const Resolution& res, const ExperimentConfig& cfg,
                      std::vector<std::string>& summary, double& c_emp) {
    const double delta = cfg.real("sep_delta");
    const int count = cfg.integer("sep_count");
    // E: points r0 u on a small sphere, r0 shrunk until the segment diameter is <= delta
    const std::vector<Point> dirs = sphere_directions(d.dim(), count);
    double r0 = 0.5 * delta / d(Point::zero(d.dim()));
    std::vector<Point> E;
    for (int guard = 0; guard < 60; ++guard) {
        E.clear();
        for (const Point& u : dirs) E.push_back(u * r0);
        double diam = 0.0;
        for (std::size_t i = 0; i < E.size(); ++i)
            diam = std::max(diam, segment_rho_length(d, E[i], E[(i + E.size() / 2) % E.size()], QuadratureConfig{}));
        // antipodal pairs dominate; a margin covers the other pairs
        if (diam <= 0.9 * delta) break;
        r0 *= 0.9;
    }
    json rows = json::array();
    c_emp = 0.0;
    for (double L : cfg.reals("sep_l")) {
        std::vector<Point> skipped;
        CurveFamily fam = rho_radial_family(d, r0, L, count, &skipped);
        if (fam.curves.empty()) {
            summary.push_back(d.id() + " separation L=" + fmt(L) + ": no direction reaches L");
            continue;
        }
        std::vector<Point> starts;
        for (const Curve& c : fam.curves) starts.push_back(c.vertices.front());
        const SeparationReport r = separation_bound_check(d, starts, delta, L, fam, solver_for(res, d.dim()));
        c_emp = std::max(c_emp, r.ratio);
        rows.push_back({{"L", L},
                        {"delta", delta},
                        {"r0", r0},
                        {"curves", fam.curves.size()},
                        {"skipped_directions", skipped.size()},
                        {"diameter_bound", r.diameter_bound},
                        {"min_curve_length", r.min_curve_length},
                        {"modulus", r.modulus.upper},
                        {"modulus_lower", r.modulus.lower},
                        {"ratio", r.ratio}});
        summary.push_back(d.id() + " separation L=" + fmt(L) + ": modulus " + fmt(r.modulus.upper) + ", ratio " +
                          fmt(r.ratio));
    }
    return {{"c_emp", c_emp}, {"cases", rows}};
}

json cone_suite(const Density& d, const Resolution& res, const ExperimentConfig& cfg,
                std::vector<std::string>& summary) {
    const auto field = origin_field(d, res);
    const double r_limit = field->grid().outer_radius();
    json rows = json::array();
    double c_emp = 0.0;
    std::size_t unstable = 0;
    for (const Point& w : sphere_directions(d.dim(), cfg.integer("cone_directions"))) {
        const double nt = nontangential_max(*field, StolzCone(w, r_limit));
        double bd = 0.0;
        std::string verdict;
        try {
            const BoundaryDistance b = field->boundary_distance(w);
            bd = b.value;
            verdict = std::string(to_string(b.limit.verdict));
        } catch (const NumericalError&) {
            ++unstable;
            continue;
        }
        const double ratio = std::isfinite(bd) ? nt / bd : 0.0;
        c_emp = std::max(c_emp, ratio);
        rows.push_back({{"omega", to_json(w)},
                        {"nontangential_max", nt},
                        {"boundary_distance", json_number(bd)},
                        {"verdict", verdict},
                        {"ratio", ratio}});
    }
    summary.push_back(d.id() + " cone/boundary: C_emp " + fmt(c_emp));
    return {{"c_emp", c_emp}, {"unstable_directions", unstable}, {"cases", rows}};
}

void run_lemmas(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    json rows = json::array();
    bool ok = true;
    // reference constant for the separation suite
    double c_ref = 0.0;
    std::vector<std::string> ignored;
    separation_suite(Density::constant(1.0, 2), res, cfg, ignored, c_ref);
    for (const Density& d : densities(cfg)) {
        json row;
        row["density"] = d.id();
        row["cap_measure"] = cap_suite(d, res, cfg, ok, out.summary);
        double c_sep = 0.0;
        row["separation"] = separation_suite(d, res, cfg, out.summary, c_sep);
        row["separation"]["constant_reference"] = c_ref;
        row["cone"] = cone_suite(d, res, cfg, out.summary);
        rows.push_back(row);
    }
    // Carleson constants of the two reference measures
    const int centers = cfg.integer("carleson_centers");
    json carleson = json::array();
    for (const auto& [name, mu] : {std::pair{"dyadic_radial", DiscreteMeasure::dyadic_radial(2)},
                                   std::pair{"uniform_volume", DiscreteMeasure::uniform_volume(2)}}) {
        const CarlesonReport c = carleson_constant(mu, CarlesonProbe::standard(2, centers));
        carleson.push_back({{"measure", name},
                            {"alpha", c.alpha},
                            {"worst_center", to_json(c.worst_center)},
                            {"worst_radius", c.worst_radius},
                            {"probes", c.probes}});
        out.summary.push_back(std::string("carleson ") + name + ": alpha " + fmt(c.alpha));
    }
    out.report["results"] = rows;
    out.report["carleson"] = carleson;
    if (!ok) out.exit_code = kExitViolation;
}

// ---------------------------------------------------------------- beta

void run_beta(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    const double floor = cfg.real("slope_floor");
    json rows = json::array();
    for (const Density& d : densities(cfg)) {
        const BetaEstimate b = estimate_beta_p0(*origin_field(d, res), floor);
        rows.push_back({{"density", d.id()},
                        {"slope", b.slope},
                        {"beta", b.beta},
                        {"p0", json_number(b.p0)},
                        {"residual", b.residual},
                        {"log_m", to_json(b.log_m)}});
        out.csv.push_back({"beta_" + file_tag(d.id()) + ".csv", csv_series(b.log_m)});
        out.summary.push_back(d.id() + ": beta " + fmt(b.beta) + ", p0 " + fmt(b.p0));
    }
    out.report["results"] = rows;
}

// ---------------------------------------------------------------- psi

void run_psi(const ExperimentConfig& cfg, RunResult& out) {
    const Resolution res = Resolution::preset(cfg.preset());
    json rows = json::array();
    for (const GrowthFunction& g : growths(cfg)) {
        const GrowthProperties p = growth_properties(g, GrowthGrid::standard());
        json row{{"psi", g.id()},
                 {"doubling_constant", json_number(p.doubling_constant)},
                 {"superadditive", p.superadditive},
                 {"multiplicative_c", p.multiplicative_c ? json(*p.multiplicative_c) : json(nullptr)},
                 {"concave", p.concave},
                 {"warnings", p.warnings}};
        std::string line = g.id() + ": doubling " + fmt(p.doubling_constant) + ", multiplicative C " +
                           (p.multiplicative_c ? fmt(*p.multiplicative_c) : std::string("none"));
        if (g.kind() == GrowthFunction::Kind::log_doubling) {
            // the interior condition fails while the boundary condition holds
            const Density d = Density::constant();
            const AnalysisReport inner = interior_psi_functional(d, g);
            const AnalysisReport bnd = orlicz_functional(*field_profiles(d, res), g, 1.0, OrliczKind::boundary);
            const bool shown = inner.verdict() == Verdict::divergent && bnd.verdict() == Verdict::convergent;
            row["counterexample"] = {{"density", d.id()},
                                     {"interior", to_json(inner)},
                                     {"boundary", to_json(bnd)},
                                     {"holds", shown}};
            out.csv.push_back({"psi_interior_" + file_tag(g.id()) + ".csv", csv_series(inner.truncations)});
            line += "; interior " + std::string(to_string(inner.verdict())) + ", boundary " +
                    std::string(to_string(bnd.verdict()));
            if (!shown) out.exit_code = kExitViolation;
        }
        rows.push_back(row);
        out.summary.push_back(line);
    }
    out.report["results"] = rows;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
    cfg.validate();
    RunResult out;
    out.report = header(cfg);
    const std::string& s = cfg.subcommand();
    if (s == "characterize") run_characterize(cfg, out);
    else if (s == "energy") run_energy(cfg, out);
    else if (s == "hi-vg") run_hi_vg(cfg, out);
    else if (s == "gh") run_gh(cfg, out);
    else if (s == "modulus") run_modulus(cfg, out);
    else if (s == "lemmas") run_lemmas(cfg, out);
    else if (s == "beta") run_beta(cfg, out);
    else if (s == "psi") run_psi(cfg, out);
    else throw ConfigError("unknown subcommand '" + s + "'");
    out.report["exit_code"] = out.exit_code;
    return out;
}

int run_and_write(const ExperimentConfig& cfg, std::ostream& log, std::ostream& err) {
    RunResult r;
    try {
        r = run(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DataError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        // domain and validation failures raised by user-supplied values
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir());
    try {
        write_atomic((dir / (cfg.subcommand() + ".json")).string(), r.report.dump(2) + "\n");
        if (!cfg.json_only())
            for (const auto& [name, content] : r.csv) write_atomic((dir / name).string(), content);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    for (const std::string& line : r.summary) log << line << "\n";
    return r.exit_code;
}

}  // namespace conflab
