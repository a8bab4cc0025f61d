#include <Eigen/Dense>
#include <cmath>

#include "cosparse/model.hpp"
#include "cosparse/rip.hpp"
#include "doctest.h"

using namespace cosparse;

TEST_CASE("identity measurement has zero isometry defect") {
    auto id = identity_operator(5);
    Matrix A = Matrix::Identity(5, 5);
    for (int s = 1; s <= 3; ++s) {
        auto e = omega_rip_exact(A, id, s);
        CHECK(e.delta == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(e.support_count == binomial_capped(5, s, kDefaultSupportCap));
    }
}

TEST_CASE("full-order constant matches an SVD cross-check") {
    const int d = 6, m = 4;
    auto op = make_random_parseval_frame(9, d, 31);
    Matrix A = make_gaussian_measurement(m, d, 32);
    auto e = omega_rip_exact(A, op, d);
    Eigen::SelfAdjointEigenSolver<Matrix> es(A.transpose() * A);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    CHECK(e.lambda_min == doctest::Approx(lo).epsilon(1e-9));
    CHECK(e.lambda_max == doctest::Approx(hi).epsilon(1e-9));
    CHECK(e.delta == doctest::Approx(std::max(hi - 1.0, 1.0 - lo)).epsilon(1e-9));
}

TEST_CASE("exhaustive constant is monotone in the order") {
    auto op = make_random_parseval_frame(10, 8, 41);
    Matrix A = make_gaussian_measurement(6, 8, 42);
    double last = 0.0;
    for (int s = 1; s <= 5; ++s) {
        auto e = omega_rip_exact(A, op, s);
        CHECK(e.delta >= last - 1e-12);
        last = e.delta;
    }
}

TEST_CASE("sampled estimate never exceeds the exhaustive one") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto op = make_random_parseval_frame(10, 8, seed * 100 + 1);
        Matrix A = make_gaussian_measurement(6, 8, seed * 100 + 2);
        auto exact = omega_rip_exact(A, op, 3);
        auto sampled = omega_rip_sampled(A, op, 3, 25, seed * 100 + 3);
        CHECK(sampled.delta <= exact.delta + 1e-12);
        CHECK(sampled.method == "sampled");
        CHECK(exact.method == "exhaustive");
        auto again = omega_rip_sampled(A, op, 3, 25, seed * 100 + 3);
        CHECK(sampled.delta == again.delta);
    }
}

TEST_CASE("witnesses reproduce their extremal ratios") {
    auto op = make_random_parseval_frame(10, 8, 51);
    Matrix A = make_gaussian_measurement(6, 8, 52);
    auto e = omega_rip_exact(A, op, 3);
    CHECK(rip_ratio(A, op, e.witness_low.support, e.witness_low.coeffs) ==
          doctest::Approx(e.lambda_min).epsilon(1e-9));
    CHECK(rip_ratio(A, op, e.witness_high.support, e.witness_high.coeffs) ==
          doctest::Approx(e.lambda_max).epsilon(1e-9));
    const auto& w = e.witness();
    const double ratio = rip_ratio(A, op, w.support, w.coeffs);
    CHECK(std::min(std::abs(ratio - (1.0 + e.delta)), std::abs(ratio - (1.0 - e.delta))) <
          1e-9);
}

TEST_CASE("classic RIP equals omega RIP with the identity operator") {
    Matrix A = make_gaussian_measurement(6, 8, 61);
    auto id = identity_operator(8);
    auto a = classic_rip_exact(A, 2);
    auto b = omega_rip_exact(A, id, 2);
    CHECK(a.delta == doctest::Approx(b.delta).epsilon(1e-12));
}

TEST_CASE("scaling the measurement scales the extreme ratios") {
    Matrix A = make_gaussian_measurement(6, 8, 71);
    auto id = identity_operator(8);
    auto one = omega_rip_exact(A, id, 1);
    auto four = omega_rip_exact(Matrix(2.0 * A), id, 1);
    CHECK(four.lambda_max == doctest::Approx(4.0 * one.lambda_max).epsilon(1e-10));
    CHECK(four.lambda_min == doctest::Approx(4.0 * one.lambda_min).epsilon(1e-10));
}

TEST_CASE("enumeration cap throws") {
    auto op = make_random_parseval_frame(10, 8, 81);
    Matrix A = make_gaussian_measurement(6, 8, 82);
    CHECK_THROWS_AS(omega_rip_exact(A, op, 4, 10), EnumerationCapError);
}
