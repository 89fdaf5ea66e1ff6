#include "wcm/experiments/acceptance.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <sys/wait.h>

#include "wcm/analytic/eden_length.hpp"
#include "wcm/analytic/limits.hpp"
#include "wcm/analytic/quadrature.hpp"
#include "wcm/analytic/three_point.hpp"
#include "wcm/analytic/two_point.hpp"
#include "wcm/experiments/runner.hpp"
#include "wcm/maps/discrete.hpp"
#include "wcm/maps/measure.hpp"
#include "wcm/series/bivariate.hpp"
#include "wcm/series/two_point_series.hpp"

namespace wcm::experiments {

namespace {

using series::ExpPoly;
using series::rat;

struct Checks {
    CriterionResult r;
    Checks(int id, std::string name) {
        r.id = id;
        r.name = std::move(name);
        r.pass = true;
    }
    void check(bool ok, const std::string& what) {
        r.pass &= ok;
        r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

std::string g(double x, int digits = 6) { return fmt(x, digits); }

ExpPoly E(std::initializer_list<std::tuple<int, int, long, long>> terms) {
    ExpPoly p;
    for (auto [k, m, n, d] : terms) p.add_term(k, m, rat(n, d));
    return p;
}

// 1. Displayed g-expansions as exact rationals.
CriterionResult series_identity() {
    Checks c(1, "series-identity");
    auto a = series::alpha_series(4);
    std::vector<series::Rational> alpha{rat(1, 2), rat(-2), rat(-12), rat(-128), rat(-1680)};
    for (int i = 0; i <= 4; ++i) c.check(a[i] == alpha[static_cast<std::size_t>(i)], "alpha [g^" + std::to_string(i) + "] = " + a[i].get_str());
    auto s = series::sigma_series(4);
    std::vector<series::Rational> sigma{rat(1, 2), rat(-3), rat(-21), rat(-246), rat(-3453)};
    for (int i = 0; i <= 4; ++i) c.check(s[i] == sigma[static_cast<std::size_t>(i)], "Sigma [g^" + std::to_string(i) + "] = " + s[i].get_str());
    auto G1 = series::g1_series(3);
    std::vector<ExpPoly> g1{ExpPoly(), E({{0, 1, 1, 1}}), E({{1, 1, 6, 1}, {0, 2, 4, 1}, {0, 1, -4, 1}}),
                            E({{2, 1, 18, 1}, {1, 2, 48, 1}, {1, 1, 18, 1}, {0, 3, 9, 1}, {0, 2, 40, 1}, {0, 1, -49, 1}})};
    for (int i = 0; i <= 3; ++i) {
        std::ostringstream os;
        os << G1[i];
        c.check(G1[i] == g1[static_cast<std::size_t>(i)], "G1 [g^" + std::to_string(i) + "] = " + os.str());
    }
    auto G2 = series::two_point_series(2, 2, 3);
    std::vector<ExpPoly> g2{ExpPoly(), ExpPoly(), E({{0, 2, 1, 1}}), E({{1, 2, 12, 1}, {0, 3, 9, 1}, {0, 2, -14, 1}, {0, 1, 9, 1}})};
    for (int i = 0; i <= 3; ++i) {
        std::ostringstream os;
        os << G2[i];
        c.check(G2[i] == g2[static_cast<std::size_t>(i)], "G2 [g^" + std::to_string(i) + "] = " + os.str());
    }
    return c.r;
}

// 2. Rooted cubic map counts by enumeration against the closed formula.
CriterionResult enumeration_counts() {
    Checks c(2, "enumeration");
    const long expect[] = {4, 32, 336};
    for (int F = 3; F <= 5; ++F) {
        auto n = static_cast<long>(maps::rooted_cubic_maps(F).size());
        auto formula = maps::rooted_cubic_count(F);
        c.check(n == expect[F - 3] && formula == n,
                "F=" + std::to_string(F) + " enumerated " + std::to_string(n) + " formula " + formula.get_str());
    }
    return c.r;
}

// 3. Brute-force discrete two-point coefficients against the (sigma, a) series.
CriterionResult discrete_two_point() {
    Checks c(3, "discrete-two-point");
    const int N = 5;
    auto sa = series::solve_sigma_a(N, N);
    for (int t = 1; t <= N + 1; ++t) {
        auto bf = maps::discrete_two_point_bruteforce(N, t);
        auto ex = series::discrete_two_point_series(sa, t);
        int nonzero = 0;
        bool eq = true;
        for (int F = 0; F <= N; ++F)
            for (int e = 0; e <= N; ++e) {
                eq &= bf.coeff(F, e) == ex.coeff(F, e);
                nonzero += bf.coeff(F, e) != 0;
            }
        c.check(eq, "t=" + std::to_string(t) + " all [z^F x^E] with F,E <= 5 equal (" + std::to_string(nonzero) + " nonzero)");
    }
    return c.r;
}

// 4. Integrals of G^(1), G^(2) by quadrature against closed forms.
CriterionResult closed_form_integrals() {
    Checks c(4, "closed-form-integrals");
    for (double gv : {0.01, 0.04, analytic::kCriticalG - 1e-6}) {
        auto p = analytic::make_params(gv);
        auto quad = [&](int d) {
            return analytic::integrate_half_line([&](double T) { return T > 0 ? analytic::two_point(d, d, p, T) : 0.0; },
                                                 std::min(20.0, 1 / p.sigma), 1e-13);
        };
        double a = p.alpha;
        double i1 = gv / (2 * a), i2 = gv * (1 - 2 * a) * (5 - 6 * a) / (32 * a);
        double q1 = quad(1), q2 = quad(2);
        c.check(std::abs(q1 - i1) < 1e-9, "g=" + g(gv, 10) + " int G1 " + g(q1, 14) + " vs " + g(i1, 14));
        c.check(std::abs(q2 - i2) < 1e-9, "g=" + g(gv, 10) + " int G2 " + g(q2, 14) + " vs " + g(i2, 14));
    }
    return c.r;
}

// 5. Three-point function: triple integral by nested adaptive cubature, boundary and appendix identities.
CriterionResult three_point_consistency() {
    Checks c(5, "three-point");
    const double gv = 0.04;
    auto p = analytic::make_params(gv);
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double tol = 1e-8;
    auto f = [&](double S, double T, double U) { return analytic::f_jet<1>(p, {S, T, U}).derivative({1, 1, 1}); };
    auto inner = [&](double S, double T) { return GK::integrate([&](double U) { return f(S, T, U); }, 0.0, INFINITY, 15, tol); };
    auto mid = [&](double S) { return GK::integrate([&](double T) { return inner(S, T); }, 0.0, INFINITY, 15, tol); };
    double I = GK::integrate(mid, 0.0, INFINITY, 15, tol);
    double target = gv / (4 * p.alpha * p.sigma * p.sigma);
    c.check(std::abs(I - target) < 1e-6, "triple integral " + g(I, 14) + " vs g/(4 alpha Sigma^2) " + g(target, 14));
    double worst = 0;
    for (auto [S, T] : {std::pair{0.1, 0.2}, {0.3, 0.5}, {1.0, 2.0}, {4.0, 0.1}, {2.5, 2.5}, {7.0, 3.0}}) {
        double v = analytic::f_jet<1>(p, {S, T, 0.0}).derivative({1, 1, 1});
        double ref = 2 * analytic::two_point(1, 1, p, S + T);
        worst = std::max(worst, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
    }
    c.check(worst < 1e-10, "boundary identity G3(S,T,0) = 2 G1(S+T): max error " + g(worst, 3));
    worst = 0;
    for (double T : {0.2, 1.0, 3.0, 9.0}) {
        auto J = analytic::f_jet<3>(p, {0.0, T, 0.0});
        double G1 = analytic::two_point(1, 1, p, T);
        worst = std::max(worst, std::abs(J.derivative({2, 1, 2}) - 2 * G1) / std::max(1.0, G1));
    }
    c.check(worst < 1e-8, "appendix identity d_S^2 d_T d_U^2 F(0,T,0) = 2 G1(T): max error " + g(worst, 3));
    return c.r;
}

// 6. Monte Carlo Eden length against the exact rational function of w.
CriterionResult eden_length(const AcceptanceOptions& o) {
    Checks c(6, "eden-expected-length");
    for (int F : {3, 4}) {
        ExperimentConfig cfg;
        cfg.experiment = "eden_length";
        cfg.F = F;
        cfg.w = {0, 0.5, 1, 2};
        cfg.N = 1000000;
        cfg.seed = o.seed + static_cast<std::uint64_t>(F);
        cfg.workers = o.workers;
        auto out = run_experiment(cfg);
        for (const auto& row : out.summary) {
            double w = row["w"], mean = row["mean"], se = row["std_error"];
            auto exact = analytic::expected_eden_length_exact(F, series::Rational(w));
            double ex = exact.get_d();
            bool ok = w == 0 ? (mean == ex && se == 0) : std::abs(mean - ex) < 3 * se;
            c.check(ok, "F=" + std::to_string(F) + " w=" + g(w) + " mean " + g(mean, 8) + " +- " + g(se, 3) + " exact " +
                            exact.get_str() + " = " + g(ex, 8));
        }
    }
    return c.r;
}

// 7. FPP / Eden coupling on each rooted cubic map with three faces.
CriterionResult coupling(const AcceptanceOptions& o) {
    Checks c(7, "fpp-eden-coupling");
    ExperimentConfig cfg;
    cfg.experiment = "coupling";
    cfg.F = 3;
    cfg.w = {1.0};
    cfg.N = 1000000;
    cfg.seed = o.seed;
    auto out = run_experiment(cfg);
    for (const auto& row : out.table.rows) {
        double p = std::stod(row[4]);
        c.check(p > 0.001, "map " + row[0] + " " + row[1] + " chi2 " + row[2] + " dof " + row[3] + " p " + row[4]);
    }
    return c.r;
}

// 8. Fixed-F two-point distribution against the normalized g-coefficient.
CriterionResult two_point_ks(const AcceptanceOptions& o) {
    Checks c(8, "fixed-F-two-point");
    for (int F : {3, 4})
        for (int d : {1, 2}) {
            ExperimentConfig cfg;
            cfg.experiment = "two_point";
            cfg.F = F;
            cfg.degrees = {d, d};
            cfg.N = 1000000;
            cfg.bins = 2000;
            cfg.seed = o.seed + static_cast<std::uint64_t>(10 * F + d);
            cfg.workers = o.workers;
            auto out = run_experiment(cfg);
            double ks = out.summary["ks"], thr = out.summary["ks_threshold"];
            c.check(ks < thr, "F=" + std::to_string(F) + " degrees (" + std::to_string(d) + "," + std::to_string(d) +
                                  ") KS " + g(ks, 4) + " threshold " + g(thr, 4));
        }
    return c.r;
}

// 9. Scaling limit at eps = 1e-3.
CriterionResult scaling_limit() {
    Checks c(9, "scaling-limit");
    const double eps = 1e-3;
    auto p = analytic::make_params_epsilon(eps);
    const double k = 1 / std::sqrt(eps);
    for (double T0 : {0.5, 1.0, 2.0}) {
        double r = analytic::two_point(1, 1, p, T0 * k) / (std::pow(eps, 1.5) * analytic::scaling_two_point(T0));
        c.check(std::abs(r - 1) < 0.01, "T0=" + g(T0) + " G1 / (2 eps^1.5 cosh/sinh^3) = " + g(r, 6));
    }
    analytic::ThreePointFrame f{0.5 * k, 1.0 * k, 2.0 * k};
    double r = analytic::f_even(p, f) / analytic::f_odd(p, f);
    c.check(std::abs(r - 1) < 0.01, "frame (0.5,1,2)/sqrt(eps) F_even/F_odd = " + g(r, 6));
    return c.r;
}

// 10. Graph vs geodesic distance and vertex density at F = 4000.
CriterionResult large_f(const AcceptanceOptions& o) {
    Checks c(10, "large-F-geometry");
    ExperimentConfig cfg;
    cfg.experiment = "ratio";
    cfg.F = 4000;
    cfg.N = 50000;
    cfg.pairs_per_map = 10;
    cfg.bin_width = 1.0;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    cfg.deterministic = true;
    cfg.chunks = 4;
    auto out = run_experiment(cfg);
    const auto& s = out.summary;
    const double upper = 1 + 1 / std::sqrt(3.0);
    std::size_t pairs = s["pairs"];
    c.check(pairs >= 10000, "pairs " + std::to_string(pairs));
    int mid_bins = s["mid_bins"];
    double worst_lo = 1e9, worst_hi = -1e9;
    for (const auto& row : out.table.rows)
        if (row[5] == "1") {
            worst_lo = std::min(worst_lo, std::stod(row[3]));
            worst_hi = std::max(worst_hi, std::stod(row[3]));
        }
    c.check(mid_bins > 0 && s["mid_bins_within_bounds"].get<bool>(),
            std::to_string(mid_bins) + " mid-T bins (T in [" + g(s["mid_t_range"][0]) + ", " + g(s["mid_t_range"][1]) +
                "]), bin means in [" + g(worst_lo, 4) + ", " + g(worst_hi, 4) + "] within [1, " + g(upper, 4) + "]");
    double mm = s["mid_mean_ratio"];
    c.check(mm >= 1.20 && mm <= 1.38, "mid-T mean ratio " + g(mm, 5) + " +- " + g(s["mid_mean_std_error"], 2) +
                                          " in [1.20, 1.38] (1 + 1/(2 sqrt 3) = " + g(1 + 0.5 / std::sqrt(3.0), 5) + ")");
    double vd = s["vertex_density"];
    c.check(vd >= 1.5 && vd <= 1.65, "vertex density " + g(vd, 5) + " +- " + g(s["vertex_density_std_error"], 2) +
                                         " in [1.5, 1.65] (1 + 1/sqrt 3 = " + g(upper, 5) + ")");
    return c.r;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 11. Two verify runs with equal seed and worker count give identical bytes.
CriterionResult reproducibility(const AcceptanceOptions& o) {
    Checks c(11, "reproducibility");
    if (o.cli_path.empty()) {
        c.check(false, "path to the wcm executable not configured");
        return c.r;
    }
    namespace fs = std::filesystem;
    char tmpl[] = "/tmp/wcm-verify-XXXXXX";
    if (!mkdtemp(tmpl)) {
        c.check(false, "cannot create a temporary directory");
        return c.r;
    }
    fs::path root(tmpl);
    std::vector<int> codes;
    for (int run = 0; run < 2; ++run) {
        fs::path dir = root / ("run" + std::to_string(run));
        fs::create_directories(dir);
        // identical command lines, each run in its own directory
        std::string cmd = "cd \"" + dir.string() + "\" && \"" + o.cli_path + "\" verify --suite acceptance --seed " +
                          std::to_string(o.seed) + " --workers " + std::to_string(std::max(2, o.workers)) +
                          " --deterministic --out . > stdout.txt 2>&1";
        int rc = std::system(cmd.c_str());
        codes.push_back(WIFEXITED(rc) ? WEXITSTATUS(rc) : -1);
    }
    c.check(codes[0] == codes[1] && (codes[0] == 0 || codes[0] == 2),
            "exit codes " + std::to_string(codes[0]) + " and " + std::to_string(codes[1]));
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(root / "run0")) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    std::size_t other = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(root / "run1")) ++other;
    c.check(other == names.size() && !names.empty(), std::to_string(names.size()) + " output files in each run");
    for (const auto& n : names) {
        auto a = read_file(root / "run0" / n), b = read_file(root / "run1" / n);
        c.check(!a.empty() && a == b, n + " identical (" + std::to_string(a.size()) + " bytes)");
    }
    fs::remove_all(root);
    return c.r;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& o) {
    switch (id) {
        case 1: return series_identity();
        case 2: return enumeration_counts();
        case 3: return discrete_two_point();
        case 4: return closed_form_integrals();
        case 5: return three_point_consistency();
        case 6: return eden_length(o);
        case 7: return coupling(o);
        case 8: return two_point_ks(o);
        case 9: return scaling_limit();
        case 10: return large_f(o);
        case 11: return reproducibility(o);
        default: throw std::out_of_range("criterion id must be in 1.." + std::to_string(kCriteriaCount));
    }
}

std::string format_result(const CriterionResult& r) {
    std::string s = std::string(r.pass ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name + "\n";
    for (const auto& d : r.details) s += "    " + d + "\n";
    return s;
}

}  // namespace wcm::experiments
