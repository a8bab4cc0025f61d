#include "cosparse/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "cosparse/rng.hpp"

namespace cosparse {

std::pair<double, double> frame_bounds(const Matrix& phi) {
    if (phi.rows() < 1 || phi.cols() < 1)
        throw InvalidArgument("frame_bounds: empty matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(phi.transpose() * phi);
    const auto& ev = es.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

AnalysisOperator make_analysis_operator(const Matrix& omega, double parseval_tol) {
    if (omega.rows() < omega.cols() || omega.cols() < 1)
        throw InvalidArgument("analysis operator must be n x d with n >= d >= 1");
    AnalysisOperator op;
    op.omega = omega;
    auto [lo, hi] = frame_bounds(omega);
    op.frame_lo = lo;
    op.frame_hi = hi;
    if (lo <= 0.0)
        throw InvalidArgument("analysis operator is not a frame (rank-deficient)");
    Matrix g = omega.transpose() * omega;
    g.diagonal().array() -= 1.0;
    op.parseval = g.cwiseAbs().maxCoeff() <= parseval_tol;
    return op;
}

AnalysisOperator make_random_parseval_frame(int n, int d, std::uint64_t seed) {
    if (n < d || d < 1)
        throw InvalidArgument("make_random_parseval_frame: need n >= d >= 1");
    Rng rng(seed);
    Matrix g(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, d);
    // Fix column signs so the factorization (and thus the frame) is unique.
    Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return make_analysis_operator(q);
}

AnalysisOperator identity_operator(int d) {
    return make_analysis_operator(Matrix::Identity(d, d));
}

std::vector<int> analyze_cosupport(const AnalysisOperator& om, const Vector& x,
                                   double zero_tol) {
    if (x.size() != om.d())
        throw InvalidArgument("analyze_cosupport: dimension mismatch");
    std::vector<int> lam;
    double xn = x.norm();
    Vector z = om.omega * x;
    for (int j = 0; j < om.n(); ++j) {
        double scale = om.omega.row(j).norm() * xn + 1.0;
        if (std::abs(z(j)) <= zero_tol * scale) lam.push_back(j);
    }
    return lam;
}

CosparseSignal generate_cosparse_signal(const AnalysisOperator& om, int ell,
                                        std::uint64_t seed, double zero_tol) {
    if (ell < 0 || ell > om.n())
        throw InvalidArgument("generate_cosparse_signal: need 0 <= ell <= n");
    Rng rng(seed);
    const int d = om.d();
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<int> lam = rng.subset(om.n(), ell);
        Vector g(d);
        for (int i = 0; i < d; ++i) g(i) = rng.gaussian();
        Vector x;
        if (ell == 0) {
            x = g;
        } else {
            Matrix sub(ell, d);
            for (int i = 0; i < ell; ++i) sub.row(i) = om.omega.row(lam[i]);
            Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            double tol = std::max(ell, d) * 1e-15 * (sv.size() ? sv(0) : 0.0);
            int rank = 0;
            for (int i = 0; i < sv.size(); ++i)
                if (sv(i) > tol) ++rank;
            if (rank >= d) continue;  // null space trivial, resample cosupport
            const Matrix null_basis = svd.matrixV().rightCols(d - rank);
            x = null_basis * (null_basis.transpose() * g);
        }
        double nx = x.norm();
        if (nx <= 1e-12) continue;
        x /= nx;
        CosparseSignal sig;
        sig.x = x;
        sig.cosupport = analyze_cosupport(om, x, zero_tol);
        sig.cosparsity = static_cast<int>(sig.cosupport.size());
        return sig;
    }
    throw InfeasibleError("generate_cosparse_signal: no nonzero signal with requested cosparsity");
}

Matrix make_gaussian_measurement(int m, int d, std::uint64_t seed, bool normalize) {
    if (m < 1 || d < 1)
        throw InvalidArgument("make_gaussian_measurement: need m, d >= 1");
    Rng rng(seed);
    Matrix a(m, d);
    double scale = normalize ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = scale * rng.gaussian();
    return a;
}

RecoveryProblem build_problem(const Matrix& A, const AnalysisOperator& om,
                              const CosparseSignal& truth, double sigma,
                              std::uint64_t seed) {
    if (A.cols() != om.d() || truth.x.size() != om.d())
        throw InvalidArgument("build_problem: dimension mismatch");
    if (sigma < 0) throw InvalidArgument("build_problem: sigma must be nonnegative");
    RecoveryProblem prob;
    prob.A = A;
    prob.omega = om;
    prob.sigma = sigma;
    prob.truth = truth;
    Vector v = Vector::Zero(A.rows());
    if (sigma > 0) {
        Rng rng(seed);
        for (int i = 0; i < v.size(); ++i) v(i) = rng.gaussian();
        double nv = v.norm();
        if (nv > 0) v *= 0.9 * sigma / nv;
    }
    prob.noise = v;
    prob.y = A * truth.x + v;
    return prob;
}

SupportPartition partition_supports(const Vector& z, int s, int M) {
    const int n = static_cast<int>(z.size());
    if (s < 1 || s >= n)
        throw InvalidArgument("partition_supports: need 1 <= s < n");
    if (M < 1) throw InvalidArgument("partition_supports: need M >= 1");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(z(a)) > std::abs(z(b));
    });
    SupportPartition part;
    part.s = s;
    part.M = M;
    part.head.assign(idx.begin(), idx.begin() + s);
    for (int pos = s; pos < n; pos += M) {
        int end = std::min(pos + M, n);
        part.blocks.emplace_back(idx.begin() + pos, idx.begin() + end);
    }
    part.sorted_values.resize(n);
    for (int i = 0; i < n; ++i) part.sorted_values(i) = z(idx[i]);
    return part;
}

double lp_norm_pow(const Vector& x, double p) {
    if (!(p > 0.0) || p > 2.0)
        throw InvalidArgument("lp_norm: need 0 < p <= 2");
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x(i)), p);
    return acc;
}

double lp_norm(const Vector& x, double p) {
    return std::pow(lp_norm_pow(x, p), 1.0 / p);
}

double compute_eta_best(const AnalysisOperator& om, const Vector& x, int s) {
    if (s < 1 || s > om.n())
        throw InvalidArgument("compute_eta_best: need 1 <= s <= n");
    Vector z = om.omega * x;
    std::vector<double> mags(om.n());
    for (int j = 0; j < om.n(); ++j) mags[j] = std::abs(z(j));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double tail = std::accumulate(mags.begin() + s, mags.end(), 0.0);
    return 2.0 / std::sqrt(static_cast<double>(s)) * tail;
}

double compute_eta_explicit(const AnalysisOperator& om, const Vector& x,
                            const std::vector<int>& head) {
    if (head.empty()) throw InvalidArgument("compute_eta_explicit: empty head");
    std::vector<char> in_head(om.n(), 0);
    for (int j : head) {
        if (j < 0 || j >= om.n())
            throw InvalidArgument("compute_eta_explicit: head index out of range");
        in_head[j] = 1;
    }
    Vector z = om.omega * x;
    double tail = 0.0;
    for (int j = 0; j < om.n(); ++j)
        if (!in_head[j]) tail += std::abs(z(j));
    return 2.0 / std::sqrt(static_cast<double>(head.size())) * tail;
}

}  // namespace cosparse
