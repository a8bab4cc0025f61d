#include "cosparse/solvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>

#include "cosparse/errors.hpp"

namespace cosparse {

namespace {

double residual_floor(const Vector& y) {
    return 1e-12 * std::max(1.0, y.norm());
}

SolverResult zero_solution(const RecoveryProblem& prob, double p, double eps_final) {
    SolverResult res;
    res.x_hat = Vector::Zero(prob.A.cols());
    res.residual = prob.y.norm();
    res.converged = true;
    res.iterations = 0;
    res.stage_starts = {0};
    const int n = static_cast<int>(prob.omega.omega.rows());
    res.objective_trace = {n * std::pow(eps_final * eps_final, p / 2.0)};
    res.analysis_lp = 0.0;
    return res;
}

Vector least_norm_ls(const Matrix& A, const Vector& y) {
    return A.completeOrthogonalDecomposition().solve(y);
}

}  // namespace

SolverResult solve_irls_lp(const RecoveryProblem& prob, double p, const IrlsOptions& opts) {
    if (!(p > 0.0) || p > 1.0) {
        throw InvalidArgument("solve_irls_lp: p must lie in (0, 1]");
    }
    const Matrix& A = prob.A;
    const Matrix& Om = prob.omega.omega;
    const Vector& y = prob.y;
    const double sigma = prob.sigma;
    const double eps_final = opts.eps0 * std::pow(opts.eps_factor, opts.eps_stages - 1);

    if (y.norm() <= sigma) {
        return zero_solution(prob, p, eps_final);
    }

    const Matrix AtA = A.transpose() * A;
    const Vector Aty = A.transpose() * y;
    const double feas_limit = std::max(sigma * (1.0 + opts.feas_tol), residual_floor(y));

    SolverResult res;
    Vector x = least_norm_ls(A, y);
    int total_solves = 0;

    // One (lambda, eps) stage: reweighted solves until the iterate settles.
    // The surrogate value S = sum_i ((Omega x)_i^2 + eps^2)^(p/2) can only rise
    // when the data term strictly falls, so on a rise we keep the new iterate
    // but close the stage to keep the recorded trace nonincreasing.
    auto run_stage = [&](double lambda, double eps) {
        res.stage_starts.push_back(static_cast<int>(res.objective_trace.size()));
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < opts.max_inner; ++it) {
            Vector z = Om * x;
            Vector w(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i) {
                w[i] = std::pow(z[i] * z[i] + eps * eps, p / 2.0 - 1.0);
            }
            Matrix H = lambda * AtA + Om.transpose() * w.asDiagonal() * Om;
            Vector x_new = H.ldlt().solve(lambda * Aty);
            ++total_solves;
            Vector z_new = Om * x_new;
            double S = 0.0;
            for (Eigen::Index i = 0; i < z_new.size(); ++i) {
                S += std::pow(z_new[i] * z_new[i] + eps * eps, p / 2.0);
            }
            double step = (x_new - x).norm() / std::max(1.0, x_new.norm());
            if (S > last) {
                x = x_new;
                break;
            }
            res.objective_trace.push_back(S);
            x = x_new;
            last = S;
            if (step < opts.inner_xtol) break;
        }
    };

    auto run_schedule = [&](double lambda) {
        double eps = opts.eps0;
        for (int s = 0; s < opts.eps_stages; ++s) {
            run_stage(lambda, eps);
            eps *= opts.eps_factor;
        }
    };

    std::optional<Vector> best_x;
    double best_obj = std::numeric_limits<double>::infinity();
    auto consider = [&](const Vector& cand) {
        double r = (A * cand - y).norm();
        if (r > feas_limit) return false;
        double obj = lp_norm_pow(Om * cand, p);
        if (obj < best_obj) {
            best_obj = obj;
            best_x = cand;
        }
        return true;
    };

    double lambda = opts.lambda0;
    double lambda_infeasible = 0.0;
    double lambda_feasible = 0.0;
    while (lambda <= opts.lambda_cap) {
        run_schedule(lambda);
        if (consider(x)) {
            lambda_feasible = lambda;
            break;
        }
        lambda_infeasible = lambda;
        lambda *= opts.lambda_growth;
    }

    if (lambda_feasible > 0.0 && lambda_infeasible > 0.0) {
        double lo = std::log(lambda_infeasible);
        double hi = std::log(lambda_feasible);
        for (int it = 0; it < opts.bisection_steps; ++it) {
            double mid = std::exp(0.5 * (lo + hi));
            run_stage(mid, eps_final);
            if (consider(x)) {
                hi = std::log(mid);
            } else {
                lo = std::log(mid);
            }
        }
    }

    res.iterations = total_solves;
    if (best_x) {
        res.x_hat = *best_x;
        res.converged = true;
    } else {
        res.x_hat = x;
        res.converged = false;
    }
    res.residual = (A * res.x_hat - y).norm();
    res.analysis_lp = lp_norm_pow(Om * res.x_hat, p);
    return res;
}

SolverResult solve_abp_l1(const RecoveryProblem& prob, const AbpOptions& opts) {
    const Matrix& A = prob.A;
    const Matrix& Om = prob.omega.omega;
    const Vector& y = prob.y;
    const double sigma = prob.sigma;
    const int n = static_cast<int>(Om.rows());
    const int m = static_cast<int>(A.rows());

    if (y.norm() <= sigma) {
        return zero_solution(prob, 1.0, 0.0);
    }

    double rho = opts.rho;
    const double alpha = opts.over_relax;
    const double feas_limit = std::max(sigma * (1.0 + opts.feas_tol), residual_floor(y));
    const int d = static_cast<int>(A.cols());

    Matrix H = Om.transpose() * Om + A.transpose() * A;
    Eigen::LDLT<Matrix> H_ldlt(H);

    auto project_ball = [&](Vector v) {
        double nv = v.norm();
        if (nv > sigma) v *= (sigma / std::max(nv, 1e-300));
        return v;
    };

    const Vector anchor = least_norm_ls(A, y);
    Vector x = anchor;
    Vector z = Om * x;
    Vector r = project_ball(A * x - y);
    Vector u = Vector::Zero(n);
    Vector w = Vector::Zero(m);

    SolverResult res;
    res.stage_starts = {0};
    bool stopped = false;
    long it = 0;
    for (; it < opts.max_iter; ++it) {
        x = H_ldlt.solve(Om.transpose() * (z - u) + A.transpose() * (y + r - w));
        Vector zx = Om * x;
        Vector ax = A * x - y;

        Vector zx_rel = alpha * zx + (1.0 - alpha) * z;
        Vector ax_rel = alpha * ax + (1.0 - alpha) * r;

        Vector z_old = z;
        Vector r_old = r;
        Vector zt = zx_rel + u;
        z = (zt.array().abs() - 1.0 / rho).max(0.0) * zt.array().sign();
        r = project_ball(ax_rel + w);
        u += zx_rel - z;
        w += ax_rel - r;

        double prim1 = (zx - z).norm();
        double prim2 = (ax - r).norm();
        double dual = rho * (Om.transpose() * (z - z_old) + A.transpose() * (r - r_old)).norm();
        if ((it & 0xf) == 0) res.objective_trace.push_back(zx.lpNorm<1>());

        double tol_p1 = std::sqrt(double(n)) * opts.tol_abs +
                        opts.tol_rel * std::max(zx.norm(), z.norm());
        double tol_p2 = std::sqrt(double(m)) * opts.tol_abs +
                        opts.tol_rel * std::max(ax.norm(), r.norm());
        double tol_d = std::sqrt(double(d)) * opts.tol_abs +
                       opts.tol_rel * rho * (Om.transpose() * u + A.transpose() * w).norm();
        if (prim1 <= tol_p1 && prim2 <= tol_p2 && dual <= tol_d) {
            stopped = true;
            ++it;
            break;
        }

        if (opts.adapt_every > 0 && (it + 1) % opts.adapt_every == 0) {
            double prim = std::sqrt(prim1 * prim1 + prim2 * prim2);
            if (prim > opts.adapt_ratio * dual && rho * 2.0 <= opts.rho_max) {
                rho *= 2.0;
                u *= 0.5;
                w *= 0.5;
            } else if (dual > opts.adapt_ratio * prim && rho * 0.5 >= opts.rho_min) {
                rho *= 0.5;
                u *= 2.0;
                w *= 2.0;
            }
        }
    }

    // The last iterate sits within O(prim2) of the ball; slide toward the
    // least-squares anchor to land inside it without moving the objective
    // beyond that same order.
    double x_resid = (A * x - y).norm();
    if (stopped && sigma > 0.0 && x_resid > sigma && (A * anchor - y).norm() <= sigma) {
        double lo = 0.0, hi = 1.0;
        for (int b = 0; b < 100; ++b) {
            double mid = 0.5 * (lo + hi);
            if ((A * (x + mid * (anchor - x)) - y).norm() <= sigma) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        x += hi * (anchor - x);
    }

    res.x_hat = x;
    res.iterations = static_cast<int>(it);
    res.residual = (A * res.x_hat - y).norm();
    res.converged = stopped && res.residual <= feas_limit;
    res.analysis_lp = (Om * res.x_hat).lpNorm<1>();
    return res;
}

SolverResult solve_l0_exhaustive(const RecoveryProblem& prob, int min_cosparsity,
                                 double feas_tol, double zero_tol) {
    const Matrix& A = prob.A;
    const Matrix& Om = prob.omega.omega;
    const Vector& y = prob.y;
    const double sigma = prob.sigma;
    const int n = static_cast<int>(Om.rows());
    const int d = static_cast<int>(Om.cols());
    if (n > 24) {
        throw EnumerationCapError("solve_l0_exhaustive: n > 24 is not enumerable");
    }
    if (min_cosparsity < 0 || min_cosparsity > n) {
        throw InvalidArgument("solve_l0_exhaustive: min_cosparsity out of range");
    }

    const double accept = sigma + residual_floor(y);
    const double feas_limit = std::max(sigma * (1.0 + feas_tol), residual_floor(y));
    const Matrix gram_full = Om.transpose() * Om;

    for (int ell = n; ell >= min_cosparsity; --ell) {
        std::optional<Vector> best_x;
        double best_r = std::numeric_limits<double>::infinity();
        std::vector<int> comb(ell);
        for (int i = 0; i < ell; ++i) comb[i] = i;
        std::vector<char> in_comb(n);
        bool more = true;
        while (more) {
            // Gram of the selected rows via the complement (cheap when ell is
            // close to n): Om_L^T Om_L = Om^T Om - sum_{j not in comb} Om_j^T Om_j.
            std::fill(in_comb.begin(), in_comb.end(), 0);
            for (int i : comb) in_comb[i] = 1;
            Matrix G = gram_full;
            for (int j = 0; j < n; ++j) {
                if (!in_comb[j]) G.noalias() -= Om.row(j).transpose() * Om.row(j);
            }
            Vector x_cand;
            if (ell == 0) {
                x_cand = least_norm_ls(A, y);
            } else {
                Eigen::SelfAdjointEigenSolver<Matrix> es(G);
                const auto& ev = es.eigenvalues();  // ascending
                double tol = d * 1e-13 * std::max(ev[d - 1], 1e-300);
                int k = 0;
                while (k < d && ev[k] <= tol) ++k;
                if (k == 0) {
                    x_cand = Vector::Zero(d);
                } else {
                    Matrix K = es.eigenvectors().leftCols(k);
                    Vector c = (A * K).completeOrthogonalDecomposition().solve(y);
                    x_cand = K * c;
                }
            }
            double r = (A * x_cand - y).norm();
            if (r <= accept && r < best_r) {
                best_r = r;
                best_x = x_cand;
            }
            // next lexicographic combination
            int i = ell - 1;
            while (i >= 0 && comb[i] == n - ell + i) --i;
            if (i < 0) {
                more = false;
            } else {
                ++comb[i];
                for (int j = i + 1; j < ell; ++j) comb[j] = comb[j - 1] + 1;
            }
            if (ell == 0) more = false;
        }
        if (best_x) {
            SolverResult res;
            res.x_hat = *best_x;
            res.residual = best_r;
            res.converged = best_r <= feas_limit;
            res.iterations = 0;
            res.analysis_lp =
                n - static_cast<double>(analyze_cosupport(prob.omega, res.x_hat, zero_tol).size());
            res.stage_starts = {0};
            res.objective_trace = {res.analysis_lp};
            return res;
        }
    }
    throw InfeasibleError("solve_l0_exhaustive: no feasible cosupport at requested cosparsity");
}

}  // namespace cosparse
