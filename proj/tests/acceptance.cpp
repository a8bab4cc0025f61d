// Acceptance gate: every numbered block below checks one shipped claim at its
// stated tolerance and prints a single [PASS] line; the first failure aborts
// with [FAIL] file:line and a nonzero exit.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cosparse/bounds.hpp"
#include "cosparse/cli.hpp"
#include "cosparse/config.hpp"
#include "cosparse/io.hpp"
#include "cosparse/model.hpp"
#include "cosparse/reference.hpp"
#include "cosparse/rip.hpp"
#include "cosparse/solvers.hpp"
#include "cosparse/suite.hpp"

#define REQUIRE(cond, msg)                                                          \
    do {                                                                            \
        if (!(cond)) {                                                              \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg     \
                      << "\n";                                                      \
            std::exit(1);                                                           \
        }                                                                           \
    } while (0)

using namespace cosparse;
namespace fs = std::filesystem;

namespace {

std::string g_base;

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void pass(int idx, const std::string& what, double t0) {
    std::printf("[PASS] %d %s (%.2f s)\n", idx, what.c_str(), now_s() - t0);
    std::fflush(stdout);
}

// run_subcommand prints its report to stdout; keep the gate output readable.
struct CoutSilencer {
    std::ostringstream sink;
    std::streambuf* old;
    CoutSilencer() : old(std::cout.rdbuf(sink.rdbuf())) {}
    ~CoutSilencer() { std::cout.rdbuf(old); }
};

int run_cli_quiet(const std::string& name, Config cfg, const std::string& out_dir) {
    CoutSilencer quiet;
    return cli::run_subcommand(name, std::move(cfg), out_dir);
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

struct OracleK {
    long double K1, K2, C0, C1;
};

// Same formulas, evaluated independently in extended precision.
OracleK oracle_constants(long double p, long double s, long double M, long double dM,
                         long double dsM) {
    const long double rho = powl(s, 0.125L) * powl(M, (1.0L - p) / p);
    const long double kappa = s / M;
    const long double gamma = rho * powl(M, 0.5L - 1.0L / p);
    const long double kp = powl(kappa, (2.0L - p) / p);
    const long double alpha = 1.0L - 4.0L * gamma * gamma - 2.0L * kp;
    const long double beta = powl(kappa, 1.0L / p - 0.5L);
    const long double K1 = sqrtl(alpha * (1.0L - dsM)) - (beta + gamma) * sqrtl(1.0L + dM);
    const long double K2 = gamma * (2.0L * sqrtl(1.0L - dsM) + sqrtl(1.0L + dM));
    return {K1, K2, 2.0L / K1, 2.0L * K2 / K1};
}

RecoveryProblem seeded_problem(uint64_t seed, int d, int n, int m, int ell, double sigma) {
    auto op = make_random_parseval_frame(n, d, seed * 1000003 + 41);
    auto sig = generate_cosparse_signal(op, ell, seed * 1000003 + 42);
    Matrix A = make_gaussian_measurement(m, d, seed * 1000003 + 43);
    return build_problem(A, op, sig, sigma, seed * 1000003 + 44);
}

void criterion1_constants() {
    const double t0 = now_s();
    BoundInputs in;
    in.p = 0.5;
    in.s = 100;
    in.M = 600;
    in.delta_M = 0.4;
    in.delta_sM = 0.5;
    in.sigma = 1e-4;
    const BoundConstants c = K_constants(in);
    REQUIRE(c.K1 && c.C0 && c.C1, "reference point must have defined constants");

    const OracleK o = oracle_constants(0.5L, 100.0L, 600.0L, 0.4L, 0.5L);
    REQUIRE(rel_close(*c.K1, static_cast<double>(o.K1), 1e-12), "K1 vs extended-precision oracle");
    REQUIRE(rel_close(c.K2, static_cast<double>(o.K2), 1e-12), "K2 vs extended-precision oracle");
    REQUIRE(rel_close(*c.C0, static_cast<double>(o.C0), 1e-12), "C0 vs extended-precision oracle");
    REQUIRE(rel_close(*c.C1, static_cast<double>(o.C1), 1e-12), "C1 vs extended-precision oracle");

    // 40-digit evaluations of the same formulas, frozen as doubles.
    REQUIRE(rel_close(*c.K1, 0.5298902467280146, 1e-12), "K1 vs frozen 40-digit value");
    REQUIRE(rel_close(c.K2, 0.18856806591091916, 1e-12), "K2 vs frozen 40-digit value");
    REQUIRE(rel_close(*c.C0, 3.7743665076865863, 1e-12), "C0 vs frozen 40-digit value");
    REQUIRE(rel_close(*c.C1, 0.71172499239341, 1e-12), "C1 vs frozen 40-digit value");

    const std::string dir = g_base + "/constants";
    REQUIRE(run_cli_quiet("constants", Config(), dir) == 0, "constants run failed");
    const std::string rep = read_file(dir + "/report.txt");
    REQUIRE(rep.find("published reference: C0 = 3.8273, C1 = 0.8840") != std::string::npos,
            "report must print the published constants beside the computed ones");
    REQUIRE(rep.find("MISMATCH") != std::string::npos,
            "report must flag the published-value discrepancy");

    const double el = now_s() - t0;
    REQUIRE(el < 1.0, "constants pipeline exceeded 1 s");
    pass(1, "constants match the extended-precision oracle to 1e-12; published C0/C1 "
            "printed and flagged", t0);
}

void criterion2_table() {
    const double t0 = now_s();
    int mismatches = 0;
    for (const auto& ref : reference::kTable1) {
        const SweepResult sw = max_delta_sweep(ref.p, 100, 600, DeltaPolicy::Zero, 0.0, 0.01);
        REQUIRE(sw.delta_max && sw.K1_at_max,
                "zero-policy sweep found no feasible point at p = " << ref.p);
        const double dmax = *sw.delta_max;
        const std::string k1s = reference::format_2sig_truncated(*sw.K1_at_max);
        if (std::fabs(ref.p - 0.5) < 1e-9) {
            REQUIRE(std::lround(dmax * 100) == 97,
                    "p = 0.5 delta_max must print as 0.97, got " << dmax);
            REQUIRE(k1s == "2.9E-2", "p = 0.5 K1 must print as 2.9E-2, got " << k1s);
        } else {
            REQUIRE(std::fabs(dmax - ref.delta_max) <= 0.02 + 1e-9,
                    "delta_max at p = " << ref.p << " outside the 0.02 band: " << dmax
                                        << " vs " << ref.delta_max);
        }
        // K1 within a factor of 3 of the published value at the published
        // delta, with one grid step of slack on the sweep endpoint.
        const double refk1 = std::strtod(ref.k1_printed, nullptr);
        double best = 1e300;
        for (double dd : {ref.delta_max - 0.01, ref.delta_max, ref.delta_max + 0.01}) {
            if (!(dd > 0.0) || dd >= 1.0) continue;
            BoundInputs bi;
            bi.p = ref.p;
            bi.s = 100;
            bi.M = 600;
            bi.delta_M = 0.0;
            bi.delta_sM = dd;
            const BoundConstants cc = K_constants(bi);
            if (!cc.K1 || *cc.K1 <= 0.0) continue;
            best = std::min(best, std::max(*cc.K1 / refk1, refk1 / *cc.K1));
        }
        REQUIRE(best <= 3.0, "K1 at p = " << ref.p
                                          << " not within a factor of 3 of the published "
                                             "value near its delta (best ratio "
                                          << best << ")");
        if (std::fabs(dmax - ref.delta_max) >= 0.005 || k1s != ref.k1_printed) ++mismatches;
    }

    Config cfg;
    cfg.set("policies", "zero");
    const std::string dir = g_base + "/table1";
    REQUIRE(run_cli_quiet("table1", cfg, dir) == 0, "table1 run failed");
    const std::string rep = read_file(dir + "/report.txt");
    std::ostringstream tail;
    tail << mismatches << " row(s) differ from the published table.";
    REQUIRE(rep.find(tail.str()) != std::string::npos,
            "report must list every residual mismatch (expected '" << tail.str() << "')");
    REQUIRE(rep.find("p = 0.5: delta_max = 0.97 (published 0.97), K1 = 2.9E-2 "
                     "(published 2.9E-2)") != std::string::npos,
            "report must reproduce the p = 0.5 row to printed precision");

    const double el = now_s() - t0;
    REQUIRE(el < 5.0, "table sweep exceeded 5 s");
    std::ostringstream what;
    what << "zero-policy table: p = 0.5 row exact, others within 0.02 and factor 3; "
         << mismatches << " mismatches listed";
    pass(2, what.str(), t0);
}

void criterion3_figures() {
    const double t0 = now_s();
    const double p_grid[6] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    for (double p : p_grid) {
        const SweepResult sw = max_delta_sweep(p, 100, 600, DeltaPolicy::Zero, 0.0, 0.01);
        double last = 1e300;
        int pts = 0;
        for (const auto& pt : sw.curve) {
            if (!pt.K1) continue;
            REQUIRE(*pt.K1 < last, "K1 fails to decrease strictly at p = "
                                       << p << ", delta = " << pt.delta);
            last = *pt.K1;
            ++pts;
        }
        REQUIRE(pts > 0, "no K1 values on the grid at p = " << p);
    }

    BoundInputs base;
    base.p = 0.5;
    base.s = 100;
    base.M = 600;
    base.delta_M = 0.4;
    base.delta_sM = 0.5;
    base.sigma = 1e-4;
    const std::vector<double> ps(p_grid, p_grid + 6);
    const auto curves = bound_curve(ps, base, 0.01, 100);
    const BoundCurve* prev = nullptr;
    int feasible = 0;
    for (const auto& c : curves) {
        if (!c.feasible) continue;
        ++feasible;
        for (double b : c.bound) REQUIRE(b < 0.15, "bound " << b << " >= 0.15 at p = " << c.p);
        if (prev) {
            for (size_t i = 0; i < c.bound.size(); ++i)
                REQUIRE(prev->bound[i] <= c.bound[i] + 1e-15,
                        "bound not monotone in p between " << prev->p << " and " << c.p);
        }
        prev = &c;
    }
    REQUIRE(feasible >= 2, "need at least two feasible p to order the curves");

    const double el = now_s() - t0;
    REQUIRE(el < 5.0, "figure checks exceeded 5 s");
    std::ostringstream what;
    what << "K1 strictly decreasing on the full grid; " << feasible
         << " feasible bound curves ordered in p, all below 0.15";
    pass(3, what.str(), t0);
}

void criterion4_suite() {
    const double t0 = now_s();
    SuiteConfig cfg;  // seeds 1..1000, all default families
    const SuiteResult res = run_suite(cfg);

    const char* gated[7] = {"norm_chain",     "cone",           "block_step",
                            "head_gram_upper", "energy_balance", "head_gram_lower",
                            "recovery_bound"};
    long logged_violations = 0;
    for (const char* name : gated) {
        const KindStats* st = nullptr;
        for (const auto& k : res.stats)
            if (k.name == name) st = &k;
        REQUIRE(st, "missing stats for " << name);
        REQUIRE(st->gating, name << " must gate the suite");
        REQUIRE(st->checked > 0, name << " was never exercised");
        REQUIRE(st->violations == 0,
                name << " has " << st->violations << " persistent violations");
    }
    const KindStats* tail = nullptr;
    const KindStats* strict = nullptr;
    for (const auto& k : res.stats) {
        if (k.name == "block_tail_sum") tail = &k;
        if (k.name == "cone_strict") strict = &k;
    }
    REQUIRE(tail && !tail->gating, "block_tail_sum must be a logged channel");
    REQUIRE(strict && !strict->gating, "cone_strict must be a logged channel");
    REQUIRE(tail->checked + tail->excluded > 0, "block_tail_sum was never reached");
    logged_violations = tail->violations + strict->violations;
    REQUIRE(static_cast<long>(res.findings.size()) == logged_violations,
            "every logged violation must appear in the findings with its context");
    for (const auto& f : res.findings) {
        REQUIRE(!f.context.family.empty() && f.context.seed >= 1,
                "finding without run context");
    }
    REQUIRE(res.ok(), "suite reported gating violations");

    const double el = now_s() - t0;
    REQUIRE(el < 60.0, "suite exceeded 60 s");
    std::ostringstream what;
    what << "seeds 1-1000: zero persistent violations on all gated checks; "
         << logged_violations << " logged findings recorded with context";
    pass(4, what.str(), t0);
}

void criterion5_domination() {
    const double t0 = now_s();
    const double p_rot[3] = {0.3, 0.5, 0.7};
    int solved = 0, premise_pass = 0, dominated = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        const int d = 8 + static_cast<int>(seed % 3);
        const int n = d + 2, m = 8, s = 2, M = 3, ell = d - 1;
        const double p = p_rot[(seed / 3) % 3], sigma = 1e-4;
        auto prob = seeded_problem(seed, d, n, m, ell, sigma);
        auto sol = solve_l0_exhaustive(prob);
        ++solved;
        const double dM = omega_rip_exact(prob.A, prob.omega, M).delta;
        const double dsM = omega_rip_exact(prob.A, prob.omega, s + M).delta;
        if (dsM >= 1.0) continue;
        BoundInputs bi;
        bi.p = p;
        bi.s = s;
        bi.M = M;
        bi.delta_M = dM;
        bi.delta_sM = dsM;
        bi.sigma = sigma;
        const BoundConstants c = K_constants(bi);
        if (!(c.gamma_feasible && c.delta_feasible && c.K1_positive)) continue;
        ++premise_pass;
        const double eta = compute_eta_best(prob.omega, prob.truth->x, s);
        const double bound = error_bound(c, sigma, eta);
        const double err = (sol.x_hat - prob.truth->x).norm();
        if (err <= bound + 1e-10 * std::max(1.0, bound)) ++dominated;
    }
    REQUIRE(solved == 100, "expected 100 solved instances, got " << solved);
    REQUIRE(dominated == premise_pass,
            "bound must dominate the observed error on every premise-passing instance ("
                << dominated << " of " << premise_pass << ")");

    std::ostringstream what;
    if (premise_pass == 0) {
        // At s = 2, M = 3 the gamma condition cannot hold for any p: gamma =
        // 2^(1/8)/sqrt(3) exceeds the threshold. Confirm that this exclusion
        // is structural, then report the domination claim as vacuous.
        const double gamma = derived_params(0.5, 2, 3).gamma;
        double worst = 0.0;
        for (double p : p_rot) {
            BoundInputs bi;
            bi.p = p;
            bi.s = 2;
            bi.M = 3;
            const Feasibility f = feasibility_conditions(bi);
            REQUIRE(gamma > f.gamma_threshold,
                    "expected the gamma condition to fail structurally at p = " << p);
            worst = std::max(worst, f.gamma_threshold);
        }
        what << "bound domination vacuous on 100 exact-delta instances: gamma "
             << reference::format_2sig_truncated(gamma) << " exceeds its threshold (max "
             << reference::format_2sig_truncated(worst) << ") at s = 2, M = 3, so 0 of "
             << solved << " instances pass the premises";
    } else {
        what << "bound dominates the observed error on " << dominated << " of "
             << premise_pass << " premise-passing instances (of " << solved << ")";
    }
    const double el = now_s() - t0;
    REQUIRE(el < 600.0, "domination sweep exceeded 10 min");
    pass(5, what.str(), t0);
}

void criterion6_rip() {
    const double t0 = now_s();
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        const int d = 6 + static_cast<int>(seed % 3);
        const int n = d + 2;
        const int m = 5 + static_cast<int>(seed % 4);
        const int s = 2 + static_cast<int>(seed % 2);
        auto op = make_random_parseval_frame(n, d, seed * 7919 + 1);
        Matrix A = make_gaussian_measurement(m, d, seed * 7919 + 2);
        const RipEstimate exact = omega_rip_exact(A, op, s);
        const RipEstimate sampled = omega_rip_sampled(A, op, s, 20, seed * 7919 + 3);
        REQUIRE(sampled.delta <= exact.delta + 1e-12,
                "sampled estimate exceeded the exhaustive constant at seed " << seed);
        const RipWitness& w = exact.witness();
        const double ratio = rip_ratio(A, op, w.support, w.coeffs);
        const double target = (exact.lambda_max - 1.0 >= 1.0 - exact.lambda_min)
                                  ? 1.0 + exact.delta
                                  : 1.0 - exact.delta;
        REQUIRE(std::fabs(ratio - target) <= 1e-9,
                "witness fails to reproduce 1 +- delta at seed " << seed << ": ratio "
                                                                 << ratio << " vs " << target);
    }
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto op = make_random_parseval_frame(10, 8, seed * 7919 + 5);
        Matrix A = make_gaussian_measurement(6, 8, seed * 7919 + 6);
        double last = 0.0;
        for (int s = 1; s <= 4; ++s) {
            const double delta = omega_rip_exact(A, op, s).delta;
            REQUIRE(delta >= last - 1e-12,
                    "delta not monotone in s at seed " << seed << ", s = " << s);
            last = delta;
        }
    }
    const double el = now_s() - t0;
    REQUIRE(el < 120.0, "rip checks exceeded 2 min");
    pass(6, "sampled <= exhaustive on 100 instances; delta monotone in s; witnesses "
            "reproduce 1 +- delta to 1e-9", t0);
}

void criterion7_solvers() {
    const double t0 = now_s();
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto prob = seeded_problem(seed, 8, 10, 6, 7, (seed % 2) ? 1e-3 : 1e-4);
        for (double p : {0.5, 1.0}) {
            const SolverResult res = solve_irls_lp(prob, p);
            const auto& tr = res.objective_trace;
            const auto& st = res.stage_starts;
            REQUIRE(!st.empty(), "missing stage markers at seed " << seed);
            for (size_t si = 0; si < st.size(); ++si) {
                const size_t lo = static_cast<size_t>(st[si]);
                const size_t hi =
                    (si + 1 < st.size()) ? static_cast<size_t>(st[si + 1]) : tr.size();
                for (size_t i = lo + 1; i < hi; ++i)
                    REQUIRE(tr[i] <= tr[i - 1] + 1e-12 * std::max(1.0, std::fabs(tr[i - 1])),
                            "objective increased within a stage at seed "
                                << seed << ", p = " << p << ", step " << i);
            }
        }
    }
    for (uint64_t seed = 101; seed <= 120; ++seed) {
        auto prob = seeded_problem(seed, 8, 10, 6, 7, 1e-3);
        const SolverResult a = solve_abp_l1(prob);
        const SolverResult b = solve_irls_lp(prob, 1.0);
        REQUIRE(a.converged, "admm did not converge at seed " << seed);
        REQUIRE(b.converged, "irls did not converge at seed " << seed);
        REQUIRE(std::fabs(a.analysis_lp - b.analysis_lp) <=
                    1e-4 * std::max(std::fabs(a.analysis_lp), std::fabs(b.analysis_lp)),
                "admm and irls objectives disagree at seed "
                    << seed << ": " << a.analysis_lp << " vs " << b.analysis_lp);
    }
    for (uint64_t seed = 201; seed <= 205; ++seed) {
        auto prob = seeded_problem(seed, 8, 10, 6, 7, 0.0);
        prob.sigma = prob.y.norm() * 1.5 + 1.0;
        REQUIRE(solve_l0_exhaustive(prob).x_hat.norm() == 0.0,
                "exhaustive solver must return zero when sigma >= ||y||");
        REQUIRE(solve_irls_lp(prob, 0.5).x_hat.norm() == 0.0,
                "irls must return zero when sigma >= ||y||");
        REQUIRE(solve_abp_l1(prob).x_hat.norm() == 0.0,
                "admm must return zero when sigma >= ||y||");
    }
    const double el = now_s() - t0;
    REQUIRE(el < 120.0, "solver checks exceeded 2 min");
    pass(7, "irls stages monotone to 1e-12; admm matches irls at p = 1 to 1e-4 on 20 "
            "instances; sigma >= ||y|| returns zero everywhere", t0);
}

void criterion8_determinism() {
    const double t0 = now_s();
    const std::string bin = COSPARSE_CLI_PATH;
    struct Job {
        const char* name;
        const char* cfg;
        std::vector<const char*> files;
    };
    const Job jobs[] = {
        {"constants", "", {"constants.csv", "report.txt", "resolved_config.txt"}},
        {"table1", "step = 0.01\n", {"table1.csv", "report.txt", "resolved_config.txt"}},
        {"figures",
         "eta_samples = 25\nstep = 0.02\n",
         {"figure1.csv", "figure2.csv", "figure1.svg", "figure2.svg", "resolved_config.txt"}},
        {"recover",
         "sigma = 1e-4\nsolver = irls\np = 0.5\n",
         {"recovery.csv", "resolved_config.txt"}},
        {"rip", "method = both\ntrials = 25\n", {"rip.csv", "resolved_config.txt"}},
        {"verify", "seed_lo = 1\nseed_hi = 3\n", {"findings.csv", "summary.txt",
                                                  "resolved_config.txt"}},
    };
    for (const auto& job : jobs) {
        const std::string cfgpath = g_base + "/" + job.name + ".cfg";
        write_file_atomic(cfgpath, job.cfg);
        std::string outs[2];
        for (int run = 0; run < 2; ++run) {
            outs[run] = g_base + "/" + job.name + "_run" + std::to_string(run + 1);
            const std::string cmd = "\"" + bin + "\" " + job.name + " --config \"" + cfgpath +
                                    "\" --out \"" + outs[run] + "\" > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            REQUIRE(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                    job.name << " run " << run + 1 << " failed");
        }
        for (const char* f : job.files) {
            const std::string a = read_file(outs[0] + "/" + f);
            const std::string b = read_file(outs[1] + "/" + f);
            REQUIRE(!a.empty(), job.name << "/" << f << " is empty");
            REQUIRE(a == b, job.name << "/" << f << " differs between identical runs");
        }
    }
    pass(8, "all six subcommands byte-identical across repeated runs", t0);
}

}  // namespace

int main() {
    const double t0 = now_s();
    g_base = (fs::temp_directory_path() / "cosparse_acceptance").string();
    fs::remove_all(g_base);
    fs::create_directories(g_base);

    criterion1_constants();
    criterion2_table();
    criterion3_figures();
    criterion4_suite();
    criterion5_domination();
    criterion6_rip();
    criterion7_solvers();
    criterion8_determinism();

    fs::remove_all(g_base);
    std::printf("all acceptance checks passed (%.2f s total)\n", now_s() - t0);
    return 0;
}
