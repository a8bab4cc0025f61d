#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cosparse/model.hpp"

namespace cosparse {

inline constexpr long kDefaultSupportCap = 2000000;

// Extremal direction for one side of the restricted isometry bound:
// support T and coefficients v with ||A x||^2 / ||Omega x||^2 = lambda
// for x = embed(v, T).
struct RipWitness {
    std::vector<int> support;
    Vector coeffs;
    double lambda = 0.0;
};

struct RipEstimate {
    int order = 0;                 // sparsity s
    double delta = 0.0;            // max(lambda_max - 1, 1 - lambda_min)
    std::string method;            // "exhaustive" or "sampled"
    long support_count = 0;        // supports examined
    long trials = 0;               // sampled draws (0 for exhaustive)
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    RipWitness witness_low;        // achieves lambda_min
    RipWitness witness_high;       // achieves lambda_max
    // Witness achieving delta itself.
    const RipWitness& witness() const {
        return (lambda_max - 1.0 >= 1.0 - lambda_min) ? witness_high : witness_low;
    }
};

// Exact restricted-isometry constant of A relative to Omega at order s:
// over every support T of size s, extreme generalized eigenvalues of
//   (A_T)^T (A_T) v = lambda (Omega_T)^T (Omega_T) v
// with column submatrices; directions with Omega x = 0 are excluded.
// Throws EnumerationCapError when C(d, s) exceeds support_cap.
RipEstimate omega_rip_exact(const Matrix& A, const AnalysisOperator& om, int s,
                            long support_cap = kDefaultSupportCap);

// Lower bound on the exact constant from `trials` uniformly sampled supports.
RipEstimate omega_rip_sampled(const Matrix& A, const AnalysisOperator& om, int s,
                              long trials, std::uint64_t seed);

// Classic RIP = Omega-RIP with Omega = I.
RipEstimate classic_rip_exact(const Matrix& A, int s,
                              long support_cap = kDefaultSupportCap);
RipEstimate classic_rip_sampled(const Matrix& A, int s, long trials,
                                std::uint64_t seed);

// Rayleigh ratio ||A x||^2 / ||Omega x||^2 for x = embed(v, T); used to
// re-validate witnesses.
double rip_ratio(const Matrix& A, const AnalysisOperator& om,
                 const std::vector<int>& support, const Vector& coeffs);

long binomial_capped(int n, int k, long cap);

}  // namespace cosparse
