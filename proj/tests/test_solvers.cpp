#include <cmath>
#include <cstdint>

#include "cosparse/model.hpp"
#include "cosparse/solvers.hpp"
#include "doctest.h"

using namespace cosparse;

namespace {

RecoveryProblem tiny_problem(uint64_t seed, int d, int n, int m, int ell, double sigma) {
    auto op = make_random_parseval_frame(n, d, seed * 1000003 + 41);
    auto sig = generate_cosparse_signal(op, ell, seed * 1000003 + 42);
    Matrix A = make_gaussian_measurement(m, d, seed * 1000003 + 43);
    return build_problem(A, op, sig, sigma, seed * 1000003 + 44);
}

}  // namespace

TEST_CASE("sigma at least ||y|| returns the zero solution in every solver") {
    auto prob = tiny_problem(2, 8, 10, 6, 7, 0.0);
    prob.sigma = prob.y.norm() + 0.1;
    auto r1 = solve_l0_exhaustive(prob);
    CHECK(r1.x_hat.norm() == 0.0);
    auto r2 = solve_irls_lp(prob, 0.5);
    CHECK(r2.x_hat.norm() == 0.0);
    CHECK(r2.converged);
    auto r3 = solve_abp_l1(prob);
    CHECK(r3.x_hat.norm() == 0.0);
    CHECK(r3.converged);
}

TEST_CASE("exhaustive search recovers a noiseless identifiable instance") {
    auto prob = tiny_problem(3, 8, 10, 6, 7, 0.0);
    auto res = solve_l0_exhaustive(prob);
    REQUIRE(prob.truth.has_value());
    CHECK((res.x_hat - prob.truth->x).norm() < 1e-8);
    CHECK(res.residual <= 1e-10);
    CHECK(res.converged);
}

TEST_CASE("irls at p = 0.5 matches the exhaustive error on the same instance") {
    auto prob = tiny_problem(3, 8, 10, 6, 7, 0.0);
    auto l0 = solve_l0_exhaustive(prob);
    auto ir = solve_irls_lp(prob, 0.5);
    const double e0 = (l0.x_hat - prob.truth->x).norm();
    const double e1 = (ir.x_hat - prob.truth->x).norm();
    CHECK(std::abs(e1 - e0) <= 1e-4);
}

TEST_CASE("irls objective is nonincreasing within each stage") {
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        auto prob = tiny_problem(seed, 8, 10, 6, 7, 1e-4);
        auto res = solve_irls_lp(prob, 0.5);
        const auto& tr = res.objective_trace;
        const auto& st = res.stage_starts;
        REQUIRE(!st.empty());
        for (size_t si = 0; si < st.size(); ++si) {
            const size_t lo = static_cast<size_t>(st[si]);
            const size_t hi = (si + 1 < st.size()) ? static_cast<size_t>(st[si + 1]) : tr.size();
            for (size_t i = lo + 1; i < hi; ++i)
                CHECK(tr[i] <= tr[i - 1] + 1e-12 * std::max(1.0, std::abs(tr[i - 1])));
        }
    }
}

TEST_CASE("admm and irls agree on the convex objective") {
    for (uint64_t seed : {11u, 12u, 13u}) {
        auto prob = tiny_problem(seed, 8, 10, 6, 7, 1e-3);
        auto a = solve_abp_l1(prob);
        auto b = solve_irls_lp(prob, 1.0);
        CHECK(a.converged);
        CHECK(b.converged);
        CHECK(std::abs(a.analysis_lp - b.analysis_lp) <=
              1e-4 * std::max(std::abs(a.analysis_lp), std::abs(b.analysis_lp)));
    }
}

TEST_CASE("admm satisfies the residual constraint") {
    auto prob = tiny_problem(21, 8, 10, 6, 7, 1e-3);
    auto res = solve_abp_l1(prob);
    CHECK(res.converged);
    CHECK(res.residual <= prob.sigma * (1.0 + 1e-6) + 1e-12);
}

TEST_CASE("exhaustive search tie-break picks the lexicographically first cosupport") {
    auto id = identity_operator(2);
    Matrix A(1, 2);
    A << 1.0, 1.0;
    RecoveryProblem prob;
    prob.A = A;
    prob.omega = id;
    prob.y = Vector::Constant(1, 3.0);
    prob.sigma = 0.0;
    auto res = solve_l0_exhaustive(prob);
    CHECK(res.x_hat[0] == doctest::Approx(0.0));
    CHECK(res.x_hat[1] == doctest::Approx(3.0));
    CHECK(res.analysis_lp == doctest::Approx(1.0));
}

TEST_CASE("exhaustive search rejects large analysis dimensions") {
    auto id = identity_operator(25);
    RecoveryProblem prob;
    prob.A = make_gaussian_measurement(5, 25, 91);
    prob.omega = id;
    prob.y = Vector::Ones(5);
    prob.sigma = 0.0;
    CHECK_THROWS_AS(solve_l0_exhaustive(prob), EnumerationCapError);
}

TEST_CASE("exhaustive search reports infeasibility") {
    RecoveryProblem prob;
    prob.A = Matrix::Identity(3, 3);
    prob.omega = identity_operator(3);
    prob.y = Vector::Ones(3);
    prob.sigma = 1e-6;
    CHECK_THROWS_AS(solve_l0_exhaustive(prob, 3), InfeasibleError);
}
