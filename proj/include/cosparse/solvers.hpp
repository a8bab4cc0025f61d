#pragma once

#include <vector>

#include "cosparse/model.hpp"

namespace cosparse {

// Residual comparisons carry an absolute floor of 1e-12*max(1, ||y||) so that
// exact-arithmetic feasibility (sigma = 0 with consistent data) is not lost to
// rounding. converged implies residual <= max(sigma*(1+feas_tol), floor).
struct SolverResult {
    Vector x_hat;
    std::vector<double> objective_trace;  // one entry per reweighted solve / iteration
    std::vector<int> stage_starts;        // trace offsets where each stage begins
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;    // recomputed ||A x_hat - y||
    double analysis_lp = 0.0; // ||Omega x_hat||_p^p at the solver's p (count of
                              // nonzero analysis coefficients for the l0 search)
};

struct IrlsOptions {
    double eps0 = 1.0;
    double eps_factor = 0.1;
    int eps_stages = 6;
    double lambda0 = 1.0;
    double lambda_growth = 10.0;
    double lambda_cap = 1e12;
    double feas_tol = 1e-6;
    int max_inner = 200;        // reweighted solves per stage
    double inner_xtol = 1e-9;   // relative iterate change stop
    int bisection_steps = 30;   // lambda refinement after the geometric phase
};

struct AbpOptions {
    double rho = 1.0;
    double over_relax = 1.8;
    long max_iter = 200000;
    double tol_abs = 1e-11;
    double tol_rel = 1e-11;
    double feas_tol = 1e-6;
    int adapt_every = 50;      // residual-balancing cadence (0 disables)
    double adapt_ratio = 10.0; // rebalance when prim/dual exceed this ratio
    double rho_min = 1e-6;
    double rho_max = 1e6;
};

// Iteratively reweighted least squares for min ||Omega x||_p^p subject to
// ||A x - y|| <= sigma, via the penalized surrogate
//   min_x lambda ||A x - y||^2 + sum_i w_i (Omega x)_i^2,
//   w_i = ((Omega x_prev)_i^2 + eps^2)^(p/2 - 1),
// eps annealed over a fixed schedule, lambda grown geometrically until the
// residual satisfies the constraint, then refined by log-lambda bisection.
// objective_trace records sum_i ((Omega x)_i^2 + eps^2)^(p/2) per solve and is
// nonincreasing within each stage (a stage ends early rather than record an
// increase; stages are (lambda, eps) segments listed in stage_starts).
SolverResult solve_irls_lp(const RecoveryProblem& prob, double p,
                           const IrlsOptions& opts = {});

// ADMM for the convex program min ||Omega x||_1 s.t. ||A x - y|| <= sigma
// (splitting z = Omega x, r = A x - y with a ball projection on r).
// Stops on the usual primal/dual residual tolerances; rho is rebalanced
// against the residual ratio, which leaves the x-update system unchanged.
// A final segment search toward a least-squares anchor removes the O(prim)
// feasibility gap of the last iterate when sigma > 0.
SolverResult solve_abp_l1(const RecoveryProblem& prob, const AbpOptions& opts = {});

// Exhaustive search: largest ell such that some cosupport of size ell admits
// x with Omega_Lambda x = 0 and ||A x - y|| <= sigma (least squares over the
// null-space parameterization). Ties: smallest residual, then lexicographically
// smallest cosupport. Requires n <= 24. Throws InfeasibleError when no
// cosupport at any ell >= min_cosparsity is feasible.
SolverResult solve_l0_exhaustive(const RecoveryProblem& prob, int min_cosparsity = 0,
                                 double feas_tol = 1e-6,
                                 double zero_tol = kDefaultZeroTol);

}  // namespace cosparse
