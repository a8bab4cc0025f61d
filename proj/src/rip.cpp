#include "cosparse/rip.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "cosparse/rng.hpp"

namespace cosparse {

namespace {

// Extreme Rayleigh values of gram_a v = lambda gram_o v restricted to the
// range of gram_o. Returns false when gram_o is numerically zero.
bool support_extremes(const Matrix& gram_a, const Matrix& gram_o,
                      double* lo, double* hi, Vector* vlo, Vector* vhi) {
    Eigen::SelfAdjointEigenSolver<Matrix> eso(gram_o);
    const Vector& mu = eso.eigenvalues();
    double mu_max = mu.maxCoeff();
    if (mu_max <= 0.0) return false;
    double tol = 1e-12 * mu_max;
    int rank = 0;
    for (int i = 0; i < mu.size(); ++i)
        if (mu(i) > tol) ++rank;
    if (rank == 0) return false;
    const int k = static_cast<int>(mu.size());
    Matrix w(k, rank);
    int c = 0;
    for (int i = 0; i < k; ++i) {
        if (mu(i) > tol) {
            w.col(c) = eso.eigenvectors().col(i) / std::sqrt(mu(i));
            ++c;
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> esr(w.transpose() * gram_a * w);
    const Vector& lam = esr.eigenvalues();
    *lo = lam.minCoeff();
    *hi = lam.maxCoeff();
    int imin = 0, imax = 0;
    lam.minCoeff(&imin);
    lam.maxCoeff(&imax);
    *vlo = w * esr.eigenvectors().col(imin);
    *vhi = w * esr.eigenvectors().col(imax);
    return true;
}

template <typename NextSupport>
RipEstimate scan_supports(const Matrix& A, const AnalysisOperator& om, int s,
                          NextSupport next, const char* method) {
    const Matrix ata = A.transpose() * A;
    const Matrix oto = om.omega.transpose() * om.omega;
    RipEstimate est;
    est.order = s;
    est.method = method;
    est.lambda_min = std::numeric_limits<double>::infinity();
    est.lambda_max = -std::numeric_limits<double>::infinity();
    std::vector<int> t;
    Matrix ga(s, s), go(s, s);
    while (next(&t)) {
        ++est.support_count;
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                ga(i, j) = ata(t[i], t[j]);
                go(i, j) = oto(t[i], t[j]);
            }
        double lo, hi;
        Vector vlo, vhi;
        if (!support_extremes(ga, go, &lo, &hi, &vlo, &vhi)) continue;
        if (lo < est.lambda_min) {
            est.lambda_min = lo;
            est.witness_low = {t, vlo, lo};
        }
        if (hi > est.lambda_max) {
            est.lambda_max = hi;
            est.witness_high = {t, vhi, hi};
        }
    }
    if (!std::isfinite(est.lambda_min))
        throw InvalidArgument("rip estimate: every support was degenerate");
    est.delta = std::max(est.lambda_max - 1.0, 1.0 - est.lambda_min);
    return est;
}

}  // namespace

long binomial_capped(int n, int k, long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n - k + i) / i, watching the cap instead of overflowing
        double est = static_cast<double>(r) * (n - k + i) / i;
        if (est > 2.0 * static_cast<double>(cap)) return cap + 1;
        r = r * (n - k + i) / i;
    }
    return r;
}

RipEstimate omega_rip_exact(const Matrix& A, const AnalysisOperator& om, int s,
                            long support_cap) {
    const int d = static_cast<int>(A.cols());
    if (om.d() != d) throw InvalidArgument("omega_rip_exact: dimension mismatch");
    if (s < 1 || s > d) throw InvalidArgument("omega_rip_exact: need 1 <= s <= d");
    long count = binomial_capped(d, s, support_cap);
    if (count > support_cap)
        throw EnumerationCapError(
            "omega_rip_exact: C(d,s) exceeds the support cap; use the sampled estimator");

    std::vector<int> cur(s);
    bool first = true;
    auto next = [&](std::vector<int>* t) {
        if (first) {
            for (int i = 0; i < s; ++i) cur[i] = i;
            first = false;
            *t = cur;
            return true;
        }
        int i = s - 1;
        while (i >= 0 && cur[i] == d - s + i) --i;
        if (i < 0) return false;
        ++cur[i];
        for (int j = i + 1; j < s; ++j) cur[j] = cur[j - 1] + 1;
        *t = cur;
        return true;
    };
    RipEstimate est = scan_supports(A, om, s, next, "exhaustive");
    return est;
}

RipEstimate omega_rip_sampled(const Matrix& A, const AnalysisOperator& om, int s,
                              long trials, std::uint64_t seed) {
    const int d = static_cast<int>(A.cols());
    if (om.d() != d) throw InvalidArgument("omega_rip_sampled: dimension mismatch");
    if (s < 1 || s > d) throw InvalidArgument("omega_rip_sampled: need 1 <= s <= d");
    if (trials < 1) throw InvalidArgument("omega_rip_sampled: need trials >= 1");
    Rng rng(seed);
    long done = 0;
    auto next = [&](std::vector<int>* t) {
        if (done >= trials) return false;
        ++done;
        *t = rng.subset(d, s);
        return true;
    };
    RipEstimate est = scan_supports(A, om, s, next, "sampled");
    est.trials = trials;
    return est;
}

RipEstimate classic_rip_exact(const Matrix& A, int s, long support_cap) {
    return omega_rip_exact(A, identity_operator(static_cast<int>(A.cols())), s,
                           support_cap);
}

RipEstimate classic_rip_sampled(const Matrix& A, int s, long trials,
                                std::uint64_t seed) {
    return omega_rip_sampled(A, identity_operator(static_cast<int>(A.cols())), s,
                             trials, seed);
}

double rip_ratio(const Matrix& A, const AnalysisOperator& om,
                 const std::vector<int>& support, const Vector& coeffs) {
    if (static_cast<int>(support.size()) != coeffs.size())
        throw InvalidArgument("rip_ratio: support/coeffs size mismatch");
    Vector x = Vector::Zero(A.cols());
    for (size_t i = 0; i < support.size(); ++i) x(support[i]) = coeffs(i);
    double den = (om.omega * x).squaredNorm();
    if (den <= 0.0) throw InvalidArgument("rip_ratio: degenerate direction");
    return (A * x).squaredNorm() / den;
}

}  // namespace cosparse
