#include "cosparse/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "cosparse/bounds.hpp"
#include "cosparse/rng.hpp"

namespace cosparse {

bool check_holds(double lhs, double rhs) {
    return lhs <= rhs + 1e-10 * std::max(1.0, std::abs(rhs));
}

namespace {

template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

struct PartitionIdx {
    std::vector<int> S0;
    std::vector<std::vector<int>> blocks;
};

PartitionIdx partition_idx(const Vector& z, int s, int M) {
    SupportPartition part = partition_supports(z, s, M);
    return {part.head, part.blocks};
}

template <typename S>
S lp_pow_at(const Vec<S>& z, const std::vector<int>& idx, S p) {
    S t = 0;
    for (int i : idx) t += std::pow(std::abs(z[i]), p);
    return t;
}

template <typename S>
S sq_norm_at(const Vec<S>& z, const std::vector<int>& idx) {
    S t = 0;
    for (int i : idx) t += z[i] * z[i];
    return t;
}

// All quantities the lemma formulas reference, in scalar type S; the partition
// indices are fixed from the double-precision sort so the long-double pass
// re-evaluates the same expression, not a different partition.
template <typename S>
struct Work {
    Mat<S> omega;
    Vec<S> h, zh, zx;
    const PartitionIdx* idx;
    int s, M;
    S p, sigma, dM, dsM;
    S rho, gamma, kp, beta;  // kp = kappa^((2-p)/p)
    S eta, h2, head_gram;

    Work(const Matrix& om, const Vector& x, const Vector& x_hat, const PartitionIdx& pidx,
         int s_, int M_, double p_, double sigma_, double dM_, double dsM_) {
        omega = om.cast<S>();
        Vec<S> xs = x.cast<S>();
        Vec<S> xh = x_hat.cast<S>();
        h = xh - xs;
        zh = omega * h;
        zx = omega * xs;
        idx = &pidx;
        s = s_;
        M = M_;
        p = S(p_);
        sigma = S(sigma_);
        dM = S(dM_);
        dsM = S(dsM_);
        S kappa = S(s) / S(M);
        rho = std::pow(S(s), S(1) / S(8)) * std::pow(S(M), (S(1) - p) / p);
        gamma = rho * std::pow(S(M), S(1) / S(2) - S(1) / p);
        kp = std::pow(kappa, (S(2) - p) / p);
        beta = std::pow(kappa, S(1) / p - S(1) / S(2));
        S tail = 0;
        std::vector<char> in_s0(zx.size(), 0);
        for (int i : pidx.S0) in_s0[i] = 1;
        for (Eigen::Index i = 0; i < zx.size(); ++i) {
            if (!in_s0[i]) tail += std::abs(zx[i]);
        }
        eta = S(2) / std::sqrt(S(s)) * tail;
        h2 = h.norm();
        Vec<S> v = Vec<S>::Zero(omega.cols());
        for (int i : pidx.S0) v += omega.row(i).transpose() * zh[i];
        if (!pidx.blocks.empty()) {
            for (int i : pidx.blocks[0]) v += omega.row(i).transpose() * zh[i];
        }
        head_gram = v.norm();
    }
};

template <typename S>
std::pair<S, S> eval_cone(const Work<S>& w, bool strict) {
    S lhs = 0;
    for (const auto& blk : w.idx->blocks) lhs += lp_pow_at(w.zh, blk, w.p);
    S head = lp_pow_at(w.zh, w.idx->S0, w.p);
    if (strict) return {lhs, head};
    std::vector<char> in_s0(w.zx.size(), 0);
    for (int i : w.idx->S0) in_s0[i] = 1;
    S xtail = 0;
    for (Eigen::Index i = 0; i < w.zx.size(); ++i) {
        if (!in_s0[i]) xtail += std::pow(std::abs(w.zx[i]), w.p);
    }
    return {lhs, S(2) * xtail + head};
}

template <typename S>
std::pair<S, S> eval_block_tail_sum(const Work<S>& w) {
    S lhs = 0;
    for (size_t j = 1; j < w.idx->blocks.size(); ++j) {
        lhs += std::pow(lp_pow_at(w.zh, w.idx->blocks[j], w.p), S(2) / w.p);
    }
    S s0_norm = std::sqrt(sq_norm_at(w.zh, w.idx->S0));
    S rhs = w.rho * w.rho * (s0_norm + w.eta) * (s0_norm + w.eta);
    return {lhs, rhs};
}

template <typename S>
std::pair<S, S> eval_block_step(const Work<S>& w) {
    const auto& blocks = w.idx->blocks;
    S fac = std::pow(S(w.M), S(1) - S(2) / w.p);
    S worst_lhs = 0, worst_rhs = 0;
    S worst = std::numeric_limits<S>::infinity();
    for (size_t j = 0; j + 1 < blocks.size(); ++j) {
        S lhs = sq_norm_at(w.zh, blocks[j + 1]);
        S rhs = fac * std::pow(lp_pow_at(w.zh, blocks[j], w.p), S(2) / w.p);
        S scaled = (rhs - lhs) / std::max(S(1), std::abs(rhs));
        if (scaled < worst) {
            worst = scaled;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
    }
    return {worst_lhs, worst_rhs};
}

template <typename S>
std::pair<S, S> eval_head_gram_upper(const Work<S>& w) {
    S lhs = w.head_gram * w.head_gram;
    S rhs = (S(4) * w.sigma * w.sigma + w.kp * (S(1) + w.dM) * w.h2 * w.h2 +
             w.gamma * w.gamma * (S(1) + w.dM) * (w.h2 + w.eta) * (w.h2 + w.eta)) /
            (S(1) - w.dsM);
    return {lhs, rhs};
}

template <typename S>
std::pair<S, S> eval_energy_balance(const Work<S>& w) {
    S lhs = (S(1) - w.kp) * w.h2 * w.h2;
    S rhs = w.h2 * w.head_gram + w.gamma * w.gamma * (w.h2 + w.eta) * (w.h2 + w.eta);
    return {lhs, rhs};
}

template <typename S>
std::pair<S, S> eval_head_gram_lower(const Work<S>& w) {
    S rad = S(1) - S(4) * w.gamma * w.gamma - S(2) * w.kp;
    S lhs = std::sqrt(std::max(rad, S(0))) * w.h2 - S(2) * w.gamma * w.eta;
    return {lhs, w.head_gram};
}

template <typename S>
std::pair<S, S> eval_recovery_bound(const Work<S>& w) {
    S alpha = S(1) - S(4) * w.gamma * w.gamma - S(2) * w.kp;
    S K1 = std::sqrt(alpha * (S(1) - w.dsM)) -
           (w.beta + w.gamma) * std::sqrt(S(1) + w.dM);
    S K2 = w.gamma * (S(2) * std::sqrt(S(1) - w.dsM) + std::sqrt(S(1) + w.dM));
    S rhs = S(2) * w.sigma / K1 + K2 * w.eta / K1;
    return {w.h2, rhs};
}

enum class Kind {
    Cone,
    ConeStrict,
    BlockTailSum,
    BlockStep,
    HeadGramUpper,
    EnergyBalance,
    HeadGramLower,
    RecoveryBound
};

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Cone: return "cone";
        case Kind::ConeStrict: return "cone_strict";
        case Kind::BlockTailSum: return "block_tail_sum";
        case Kind::BlockStep: return "block_step";
        case Kind::HeadGramUpper: return "head_gram_upper";
        case Kind::EnergyBalance: return "energy_balance";
        case Kind::HeadGramLower: return "head_gram_lower";
        case Kind::RecoveryBound: return "recovery_bound";
    }
    return "";
}

template <typename S>
std::pair<S, S> eval_kind(Kind k, const Work<S>& w) {
    switch (k) {
        case Kind::Cone: return eval_cone(w, false);
        case Kind::ConeStrict: return eval_cone(w, true);
        case Kind::BlockTailSum: return eval_block_tail_sum(w);
        case Kind::BlockStep: return eval_block_step(w);
        case Kind::HeadGramUpper: return eval_head_gram_upper(w);
        case Kind::EnergyBalance: return eval_energy_balance(w);
        case Kind::HeadGramLower: return eval_head_gram_lower(w);
        case Kind::RecoveryBound: return eval_recovery_bound(w);
    }
    return {0, 0};
}

struct Inputs {
    const Matrix* omega;
    const Vector* x;
    const Vector* x_hat;
    PartitionIdx idx;
    int s, M;
    double p, sigma, dM, dsM;
};

CheckReport run_check(Kind kind, const Inputs& in, bool premises_ok, const CheckContext& ctx) {
    CheckReport rep;
    rep.name = kind_name(kind);
    rep.premises_ok = premises_ok;
    rep.context = ctx;
    Work<double> wd(*in.omega, *in.x, *in.x_hat, in.idx, in.s, in.M, in.p, in.sigma, in.dM,
                    in.dsM);
    auto [lhs, rhs] = eval_kind(kind, wd);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.margin = rhs - lhs;
    rep.holds = check_holds(lhs, rhs);
    if (!rep.holds && premises_ok) {
        Work<long double> wl(*in.omega, *in.x, *in.x_hat, in.idx, in.s, in.M, in.p, in.sigma,
                             in.dM, in.dsM);
        auto [llhs, lrhs] = eval_kind(kind, wl);
        if (check_holds(static_cast<double>(llhs), static_cast<double>(lrhs))) {
            rep.holds = true;
            rep.precision_resolved = true;
            rep.lhs = static_cast<double>(llhs);
            rep.rhs = static_cast<double>(lrhs);
            rep.margin = rep.rhs - rep.lhs;
        }
    }
    return rep;
}

bool objective_premise(const AnalysisOperator& op, const Vector& x, const Vector& x_hat,
                       double p) {
    double ox = lp_norm_pow(op.omega * x, p);
    double oh = lp_norm_pow(op.omega * x_hat, p);
    return oh <= ox + 1e-12 * std::max(1.0, ox);
}

bool feasible_point(const Matrix& A, const Vector& y, const Vector& x, double sigma) {
    return (A * x - y).norm() <= sigma + 1e-12 * std::max(1.0, y.norm());
}

}  // namespace

std::vector<CheckReport> check_norm_chain(int d, int trials, uint64_t seed) {
    static const double p_grid[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    Rng rng(seed);
    std::vector<CheckReport> out;
    auto eval_vector = [&](const Vector& v, const char* family) {
        double worst = std::numeric_limits<double>::infinity();
        double wl = 0, wr = 0, wp = 0;
        double n2 = v.norm();
        double n1 = v.lpNorm<1>();
        auto consider = [&](double lhs, double rhs, double p) {
            double scaled = (rhs - lhs) / std::max(1.0, std::abs(rhs));
            if (scaled < worst) {
                worst = scaled;
                wl = lhs;
                wr = rhs;
                wp = p;
            }
        };
        consider(n2, n1, 2.0);
        consider(n1, std::sqrt(double(d)) * n2, 1.0);
        for (double p : p_grid) {
            consider(lp_norm(v, p), std::pow(double(d), 1.0 / p - 0.5) * n2, p);
        }
        CheckReport rep;
        rep.name = "norm_chain";
        rep.context.family = family;
        rep.context.seed = seed;
        rep.context.p = wp;
        rep.lhs = wl;
        rep.rhs = wr;
        rep.margin = wr - wl;
        rep.premises_ok = true;
        rep.holds = check_holds(wl, wr);
        if (!rep.holds) {
            // same chain in long double
            Vec<long double> vl = v.cast<long double>();
            long double l2 = vl.norm();
            long double l1 = vl.template lpNorm<1>();
            bool ok = l2 <= l1 + 1e-10L && l1 <= std::sqrt((long double)d) * l2 + 1e-10L;
            for (double p : p_grid) {
                long double lp = 0;
                for (Eigen::Index i = 0; i < vl.size(); ++i) {
                    lp += std::pow(std::abs(vl[i]), (long double)p);
                }
                lp = std::pow(lp, 1.0L / (long double)p);
                ok = ok && lp <= std::pow((long double)d, 1.0L / (long double)p - 0.5L) * l2 +
                               1e-10L * std::max(1.0L, l2);
            }
            if (ok) {
                rep.holds = true;
                rep.precision_resolved = true;
            }
        }
        out.push_back(rep);
    };
    for (int t = 0; t < trials; ++t) {
        Vector g(d);
        for (int i = 0; i < d; ++i) g[i] = rng.gaussian();
        eval_vector(g, "norm_gaussian");

        Vector sp = Vector::Zero(d);
        int k = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(d)));
        auto supp = rng.subset(d, k);
        for (int i : supp) sp[i] = rng.gaussian();
        eval_vector(sp, "norm_sparse");

        Vector c(d);
        for (int i = 0; i < d; ++i) c[i] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        eval_vector(c, "norm_constant");
    }
    return out;
}

std::array<CheckReport, 2> check_cone(const AnalysisOperator& op, const Vector& x,
                                      const Vector& x_hat, int s, int M, double p,
                                      bool minimizer_pair, const CheckContext& ctx) {
    Vector zh = op.omega * (x_hat - x);
    Inputs in{&op.omega, &x, &x_hat, partition_idx(zh, s, M), s, M, p, ctx.sigma, 0.0, 0.0};
    bool obj = objective_premise(op, x, x_hat, p);
    return {run_check(Kind::Cone, in, obj, ctx),
            run_check(Kind::ConeStrict, in, obj && minimizer_pair, ctx)};
}

std::array<CheckReport, 2> check_blocks(const AnalysisOperator& op, const Vector& x,
                                        const Vector& x_hat, int s, int M, double p,
                                        const CheckContext& ctx) {
    Vector zh = op.omega * (x_hat - x);
    Inputs in{&op.omega, &x, &x_hat, partition_idx(zh, s, M), s, M, p, ctx.sigma, 0.0, 0.0};
    bool obj = objective_premise(op, x, x_hat, p);
    return {run_check(Kind::BlockTailSum, in, obj, ctx),
            run_check(Kind::BlockStep, in, true, ctx)};
}

std::array<CheckReport, 3> check_rip_lemmas(const RecoveryProblem& prob, const Vector& x,
                                            const Vector& x_hat, int s, int M, double p,
                                            double delta_M, double delta_sM,
                                            const CheckContext& ctx) {
    Vector zh = prob.omega.omega * (x_hat - x);
    Inputs in{&prob.omega.omega, &x,     &x_hat, partition_idx(zh, s, M),
              s,                 M,      p,      prob.sigma,
              delta_M,           delta_sM};
    bool obj = objective_premise(prob.omega, x, x_hat, p);
    bool feas = feasible_point(prob.A, prob.y, x, prob.sigma) &&
                feasible_point(prob.A, prob.y, x_hat, prob.sigma);
    double kp = std::pow(double(s) / M, (2.0 - p) / p);
    double gamma = std::pow(double(s), 0.125) / std::sqrt(double(M));
    bool gamma_gate = 0.25 - 0.5 * kp > 0.0 && gamma < std::sqrt(0.25 - 0.5 * kp);
    // Corrupted RIP constants invalidate the whole hypothesis family.
    bool deltas_ok = delta_M >= 0.0 && delta_sM >= 0.0 && delta_sM < 1.0;
    bool base = obj && feas && deltas_ok;
    return {run_check(Kind::HeadGramUpper, in, base, ctx),
            run_check(Kind::EnergyBalance, in, base, ctx),
            run_check(Kind::HeadGramLower, in, base && gamma_gate, ctx)};
}

CheckReport check_recovery_bound(const RecoveryProblem& prob, const Vector& x,
                                 const Vector& x_hat, int s, int M, double p,
                                 double delta_M, double delta_sM, const CheckContext& ctx) {
    Vector zh = prob.omega.omega * (x_hat - x);
    Inputs in{&prob.omega.omega, &x,     &x_hat, partition_idx(zh, s, M),
              s,                 M,      p,      prob.sigma,
              delta_M,           delta_sM};
    bool obj = objective_premise(prob.omega, x, x_hat, p);
    bool feas = feasible_point(prob.A, prob.y, x, prob.sigma) &&
                feasible_point(prob.A, prob.y, x_hat, prob.sigma);
    bool gates = false;
    if (delta_M >= 0.0 && delta_sM >= 0.0 && delta_sM < 1.0) {
        BoundInputs bi;
        bi.p = p;
        bi.s = s;
        bi.M = M;
        bi.delta_M = delta_M;
        bi.delta_sM = delta_sM;
        bi.sigma = prob.sigma;
        BoundConstants bc = K_constants(bi);
        gates = bc.gamma_feasible && bc.delta_feasible && bc.K1_positive;
    }
    return run_check(Kind::RecoveryBound, in, obj && feas && gates, ctx);
}

}  // namespace cosparse
