// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conflab/curve_family.hpp"
#include "conflab/functionals.hpp"
#include "conflab/metric_checks.hpp"
#include "conflab/modulus.hpp"

using namespace conflab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
    void expect(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string f6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool within(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail += std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  (%s; %.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

const Resolution kDefault = Resolution::preset("default");
const Resolution kFine = Resolution::preset("fine");

std::vector<Density> catalog() {
    return {Density::constant(), Density::power(0.25), Density::power(0.5), Density::koebe(), Density::moebius()};
}

// Runs characterize over catalog x psi = t^p and tallies the cells.
void tally(const Resolution& res, const std::vector<double>& ps, int& decided_cells, int& undecided, int& inconsistent,
           int& kinds) {
    for (const Density& d : catalog()) {
        const auto prof = field_profiles(d, res);
        for (double p : ps) {
            const Characterization c = characterize(*prof, GrowthFunction::power(p));
            kinds += static_cast<int>(c.kinds.size());
            undecided += static_cast<int>(c.inconclusive.size());
            if (!c.consistent) ++inconsistent;
            ++decided_cells;
        }
    }
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    criterion(1, [] {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const auto f = origin_field(Density::constant(), kDefault);
        const double d = f->distance(Point(0.5, 0.0));
        const double b = f->boundary_distance(Point(1.0, 0.0)).value;
        const double t = seconds_since(t0);
        o.expect(within(d, 0.5, 0.02), "d(0,(0.5,0)) = " + f6(d));
        o.expect(within(b, 1.0, 0.02), "boundary distance = " + f6(b));
        o.expect(t < 10.0, "runtime " + f6(t) + " s");
        return o;
    });

    criterion(2, [] {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const double b = origin_field(Density::power(0.5), kDefault)->boundary_distance(Point(1.0, 0.0)).value;
        const double k = origin_field(Density::koebe(), kDefault)->distance(Point(-0.5, 0.0));
        const double t = seconds_since(t0);
        o.expect(within(b, 2.0, 0.03), "power(1/2) boundary distance = " + f6(b));
        o.expect(within(k, 2.0 / 9.0, 0.03), "koebe d(0,(-0.5,0)) = " + f6(k));
        o.expect(t < 30.0, "runtime " + f6(t) + " s");
        return o;
    });

    criterion(3, [] {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const AnalysisReport e1 = energy_functional(Density::constant(), 1.0);
        const AnalysisReport eh = energy_functional(Density::constant(), 0.5);
        const double t = seconds_since(t0);
        const double v1 = e1.limit.extrapolated.value_or(NAN), vh = eh.limit.extrapolated.value_or(NAN);
        o.expect(within(v1, kPi, 0.01), "energy(p=1) = " + f6(v1));
        o.expect(within(vh, 8.0 * kPi / 3.0, 0.01), "energy(p=1/2) = " + f6(vh));
        o.expect(t < 10.0, "runtime " + f6(t) + " s");
        return o;
    });

    criterion(4, [] {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const Density k = Density::koebe();
        const auto prof = field_profiles(k, kDefault);
        for (double p : {0.25, 0.4, 0.6, 0.75}) {
            const Verdict want = p < 0.5 ? Verdict::convergent : Verdict::divergent;
            const Verdict e = energy_functional(k, p).verdict();
            const Verdict c = characterize(*prof, GrowthFunction::power(p)).overall;
            o.expect(e == want && c == want,
                     "p=" + f6(p) + " energy " + std::string(to_string(e)) + ", characterize " + std::string(to_string(c)));
        }
        const double t = seconds_since(t0);
        o.expect(t < 300.0, "runtime " + f6(t) + " s");
        return o;
    });

    criterion(5, [] {
        Outcome o;
        const std::vector<double> ps{0.25, 0.5, 1.0, 2.0};
        int cells = 0, undecided = 0, inconsistent = 0, kinds = 0;
        tally(kDefault, ps, cells, undecided, inconsistent, kinds);
        o.expect(inconsistent == 0, "default: " + std::to_string(inconsistent) + " inconsistent of " + std::to_string(cells));
        o.expect(undecided * 10 <= kinds, "default: " + std::to_string(undecided) + "/" + std::to_string(kinds) + " inconclusive");
        cells = undecided = inconsistent = kinds = 0;
        tally(kFine, ps, cells, undecided, inconsistent, kinds);
        o.expect(inconsistent == 0, "fine: " + std::to_string(inconsistent) + " inconsistent");
        o.expect(undecided == 0, "fine: " + std::to_string(undecided) + "/" + std::to_string(kinds) + " inconclusive");
        return o;
    });

    criterion(6, [] {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const CurveFamily radial = make_family("radial:cap=pi,r=0.36787944117144233");
        const double md = numerical_modulus(radial, solver_for(kDefault, 2)).upper;
        const double mf = numerical_modulus(radial, solver_for(kFine, 2)).upper;
        const double r1 = 0.2, r2 = 0.2 * std::exp(1.0);
        const CurveFamily ann = make_family("annulus:r1=0.2,r2=0.5436563656918091");
        const double ma = numerical_modulus(ann, solver_for(kDefault, 2)).upper;
        const double oracle_a = 2.0 * kPi / std::log(r2 / r1);
        const double t = seconds_since(t0);
        o.expect(within(md, kPi, 0.05), "radial default " + f6(md));
        o.expect(within(mf, kPi, 0.02), "radial fine " + f6(mf));
        o.expect(within(ma, oracle_a, 0.05), "annulus " + f6(ma) + " vs " + f6(oracle_a));
        o.expect(t < 120.0, "runtime " + f6(t) + " s");
        return o;
    });

    criterion(7, [] {
        Outcome o;
        for (const Density& d : {Density::koebe(), Density::power(0.5)}) {
            const auto base = origin_field(d, kDefault);
            const auto hot = d.boundary_hotspots();
            const Point u = hot.empty() ? Point::e1(2) : hot.front();
            std::vector<CapMeasureReport> reps;
            std::vector<double> per_radius;
            double c_emp = 0.0;
            for (double rx : {0.8, 0.9, 0.95}) {
                const GeodesicField f = base->resourced(u * rx);
                double c_r = 0.0;
                for (double M : {4.0, 10.0, 100.0}) {
                    reps.push_back(cap_measure_test(f, M, 256));
                    c_r = std::max(c_r, reps.back().ratio);
                }
                per_radius.push_back(c_r);
                c_emp = std::max(c_emp, c_r);
            }
            bool bounded = std::isfinite(c_emp);
            for (const CapMeasureReport& r : reps) bounded = bounded && r.measure <= c_emp * r.bound_unit * (1.0 + 1e-12);
            bool stable = true;
            std::string spread;
            for (double c : per_radius) {
                stable = stable && (c_emp == 0.0 || c >= 0.5 * c_emp);
                spread += (spread.empty() ? "" : "/") + f6(c);
            }
            o.expect(bounded && stable, d.id() + " C_emp " + f6(c_emp) + " per |x| " + spread);
        }
        return o;
    });

    criterion(8, [] {
        Outcome o;
        const std::vector<Point> ends{Point(0.9, 0.0), Point(-0.9, 0.0), Point(-1.0, 0.0), Point(0.0, 1.0), Point(0.5, 0.5)};
        double c_emp = 0.0, worst_geodesic = 0.0;
        std::uint64_t seed = 11;
        for (const Density& d : catalog()) {
            for (const Point& x : ends) {
                const bool boundary = std::abs(x.norm() - 1.0) < 1e-12;
                CurveFamily fam = perturbed_family(x, boundary ? 100 : 200, seed++);
                if (boundary) {
                    const CurveFamily s = spiral_family(x, 100, seed++);
                    fam.curves.insert(fam.curves.end(), s.curves.begin(), s.curves.end());
                }
                const GhReport g = gh_ratio(d, x, fam);
                c_emp = std::max(c_emp, g.ratio);
                const bool geodesic = d.is_radial() || (d.kind() == Density::Kind::koebe && x[1] == 0.0);
                if (geodesic) worst_geodesic = std::max(worst_geodesic, g.ratio);
            }
        }
        o.expect(worst_geodesic <= 1.05, "max ratio on geodesic endpoints " + f6(worst_geodesic));
        o.expect(std::isfinite(c_emp), "suite C_emp " + f6(c_emp));
        return o;
    });

    criterion(9, [] {
        Outcome o;
        const BetaEstimate b = estimate_beta_p0(*origin_field(Density::koebe(), kDefault));
        o.expect(within(b.beta, 2.0, 0.1), "beta " + f6(b.beta));
        o.expect(std::abs(b.p0 - 0.5) <= 0.05, "p0 " + f6(b.p0));
        // criterion 4 saw convergence at p = 0.4 and divergence at p = 0.6
        o.expect(b.p0 > 0.4 && b.p0 < 0.6, "p0 between the tested exponents");
        return o;
    });

    criterion(10, [] {
        Outcome o;
        std::mt19937_64 rng(20241015);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const Resolution coarse = Resolution::preset("coarse");
        const std::vector<Density> cat = catalog();
        double worst = 0.0;
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
        for (int i = 0; i < 20; ++i) {
            const Density& d = cat[static_cast<std::size_t>(unit(rng) * cat.size()) % cat.size()];
            const double lambda = 0.25 + 4.0 * unit(rng);
            const double p = 0.2 + 2.0 * unit(rng);
            switch (i % 3) {
                case 0: {  // energy scales like lambda^p
                    const AnalysisReport a = energy_functional(d, p);
                    const AnalysisReport b = energy_functional(d.scaled(lambda), p);
                    for (std::size_t j = 0; j < a.truncations.size(); ++j)
                        worst = std::max(worst, rel(b.truncations[j].value, std::pow(lambda, p) * a.truncations[j].value));
                    break;
                }
                case 1: {  // power psi: the delta scan scales like delta^p
                    const auto prof = field_profiles(d, coarse);
                    const GrowthFunction g = GrowthFunction::power(p);
                    const OrliczKind kind = kAllOrliczKinds[i % 4];
                    const AnalysisReport a = orlicz_functional(*prof, g, 1.0, kind);
                    const AnalysisReport b = orlicz_functional(*prof, g, lambda, kind);
                    for (std::size_t j = 0; j < a.truncations.size(); ++j)
                        worst = std::max(worst, rel(b.truncations[j].value, std::pow(lambda, p) * a.truncations[j].value));
                    break;
                }
                default: {  // distances scale like lambda
                    const auto f1 = origin_field(d, coarse);
                    const auto f2 = origin_field(d.scaled(lambda), coarse);
                    const double r = 0.9 * unit(rng), t = 2.0 * kPi * unit(rng);
                    const Point y(r * std::cos(t), r * std::sin(t));
                    worst = std::max(worst, rel(f2->distance(y), lambda * f1->distance(y)));
                    worst = std::max(worst, rel(f2->max_modulus(r), lambda * f1->max_modulus(r)));
                }
            }
        }
        o.expect(worst <= 1e-9, "worst relative deviation " + f6(worst) + " over 20 checks");
        return o;
    });

    criterion(11, [] {
        Outcome o;
        const Density d = Density::constant();
        const GrowthFunction g = GrowthFunction::log_doubling();
        const AnalysisReport inner = interior_psi_functional(d, g);
        const AnalysisReport bnd = orlicz_functional(*field_profiles(d, kDefault), g, 1.0, OrliczKind::boundary);
        o.expect(inner.verdict() == Verdict::divergent, "interior " + std::string(to_string(inner.verdict())));
        o.expect(bnd.verdict() == Verdict::convergent, "boundary " + std::string(to_string(bnd.verdict())));
        return o;
    });

    criterion(12, [] {
        Outcome o;
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "conflab_acceptance_determinism";
        fs::remove_all(dir);
        const std::string cmd = std::string("\"") + CONFLAB_CLI + "\" characterize --preset coarse --seed 5 --json-only --out \"" +
                                dir.string() + "\" > /dev/null";
        std::string first;
        for (int run = 0; run < 2; ++run) {
            const int rc = std::system(cmd.c_str());
            o.expect(rc == 0, "run " + std::to_string(run + 1) + " exit " + std::to_string(rc));
            const std::string bytes = read_file(dir / "characterize.json");
            if (run == 0) first = bytes;
            else o.expect(!bytes.empty() && bytes == first, "reports byte-identical (" + std::to_string(bytes.size()) + " bytes)");
        }
        return o;
    });

    std::printf("%s\n", failures == 0 ? "all criteria pass" : (std::to_string(failures) + " criteria fail").c_str());
    return failures == 0 ? 0 : 1;
}
