#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "cosparse/errors.hpp"

namespace cosparse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultZeroTol = 1e-10;
inline constexpr double kDefaultParsevalTol = 1e-10;

// Analysis operator Omega (n x d, n >= d) with cached frame bounds.
// frame_lo/frame_hi are the extreme eigenvalues of Omega^T Omega;
// parseval is set when Omega^T Omega is the identity within tolerance.
struct AnalysisOperator {
    Matrix omega;
    double frame_lo = 0.0;
    double frame_hi = 0.0;
    bool parseval = false;

    int n() const { return static_cast<int>(omega.rows()); }
    int d() const { return static_cast<int>(omega.cols()); }
};

// x together with its cosupport {j : <omega_j, x> = 0} and cosparsity l = |cosupport|.
struct CosparseSignal {
    Vector x;
    std::vector<int> cosupport;
    int cosparsity = 0;
};

// y = A x + v with ||v||_2 <= sigma.
struct RecoveryProblem {
    Matrix A;
    AnalysisOperator omega;
    Vector y;
    double sigma = 0.0;
    std::optional<CosparseSignal> truth;
    std::optional<Vector> noise;

    int m() const { return static_cast<int>(A.rows()); }
    int d() const { return static_cast<int>(A.cols()); }
};

// Index partition of analysis coefficients z: S0 holds the s largest |z_i|
// (ties broken toward the lower index), the remaining indices are sorted by
// nonincreasing |z_i| and chopped into blocks of M (the last may be short).
// sorted_values holds z reordered to [S0, blocks...], so |values| is
// nonincreasing along the whole sequence.
struct SupportPartition {
    int s = 0;
    int M = 0;
    std::vector<int> head;                     // S0, |head| = s
    std::vector<std::vector<int>> blocks;      // S1, S2, ...
    Vector sorted_values;
};

// Smallest/largest eigenvalue of Phi^T Phi (squared extreme singular values).
std::pair<double, double> frame_bounds(const Matrix& phi);

// Wraps a matrix, computing frame bounds and the parseval flag.
// Throws InvalidArgument unless n >= d >= 1 and the matrix is a frame (frame_lo > 0).
AnalysisOperator make_analysis_operator(const Matrix& omega,
                                        double parseval_tol = kDefaultParsevalTol);

// n x d Gaussian matrix with orthonormalized columns (Omega^T Omega = I_d).
AnalysisOperator make_random_parseval_frame(int n, int d, std::uint64_t seed);

AnalysisOperator identity_operator(int d);

// Cosupport of x under the relative zero test |<omega_j,x>| <= tol*(||omega_j|| ||x|| + 1).
std::vector<int> analyze_cosupport(const AnalysisOperator& om, const Vector& x,
                                   double zero_tol = kDefaultZeroTol);

// Unit-norm signal with cosparsity ell: picks a random cosupport, projects a
// Gaussian vector onto the null space of the selected rows, resamples the
// cosupport (up to 50 attempts) when the projection collapses.
// Throws InfeasibleError when no attempt produces a nonzero signal.
CosparseSignal generate_cosparse_signal(const AnalysisOperator& om, int ell,
                                        std::uint64_t seed,
                                        double zero_tol = kDefaultZeroTol);

// m x d iid Gaussian; entries scaled by 1/sqrt(m) when normalize is set.
Matrix make_gaussian_measurement(int m, int d, std::uint64_t seed, bool normalize = true);

// y = A x + v with v Gaussian rescaled so ||v|| = 0.9*sigma (v = 0 when sigma = 0).
RecoveryProblem build_problem(const Matrix& A, const AnalysisOperator& om,
                              const CosparseSignal& truth, double sigma,
                              std::uint64_t seed);

// Throws InvalidArgument unless 1 <= s < n and M >= 1.
SupportPartition partition_supports(const Vector& z, int s, int M);

// sum_i |x_i|^p, 0 < p <= 2.
double lp_norm_pow(const Vector& x, double p);
// (sum_i |x_i|^p)^(1/p).
double lp_norm(const Vector& x, double p);

// Tail measure eta = (2/sqrt(s)) * ||(Omega x) restricted off S0||_1.
// best-of-x policy: S0 = indices of the s largest |(Omega x)_i|.
double compute_eta_best(const AnalysisOperator& om, const Vector& x, int s);
// explicit policy: caller supplies S0 (s indices into {0..n-1}).
double compute_eta_explicit(const AnalysisOperator& om, const Vector& x,
                            const std::vector<int>& head);

}  // namespace cosparse
