#include <cmath>
#include <limits>
#include <vector>

#include "cosparse/bounds.hpp"
#include "doctest.h"

using namespace cosparse;

namespace {

BoundInputs reference_point() {
    BoundInputs in;
    in.p = 0.5;
    in.s = 100;
    in.M = 600;
    in.delta_M = 0.4;
    in.delta_sM = 0.5;
    in.sigma = 1e-4;
    return in;
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

// Expected values in this file were frozen from an independent 40-digit
// scalar evaluation of the same closed-form expressions.
TEST_CASE("constants at the reference point match the frozen oracle") {
    auto c = K_constants(reference_point());
    REQUIRE(c.K1.has_value());
    CHECK(rel_close(*c.K1, 0.5298902467280146, 1e-12));
    CHECK(rel_close(c.K2, 0.18856806591091916, 1e-12));
    REQUIRE(c.C0.has_value());
    REQUIRE(c.C1.has_value());
    CHECK(rel_close(*c.C0, 3.7743665076865863, 1e-12));
    CHECK(rel_close(*c.C1, 0.71172499239341, 1e-12));
    CHECK(rel_close(c.rho, 1066.9676460233537, 1e-12));
    CHECK(rel_close(c.gamma, 0.07259795291154771, 1e-12));
    CHECK(rel_close(c.alpha, 0.9696588896729515, 1e-12));
    CHECK(rel_close(c.beta, 0.06804138174397717, 1e-12));
    CHECK(c.K1_positive);
    CHECK(c.gamma_feasible);
    CHECK(c.delta_feasible);

    auto f = feasibility_conditions(reference_point());
    CHECK(f.gamma_ok);
    CHECK(f.delta_ok);
    CHECK(rel_close(f.gamma_threshold, 0.49767980186580326, 1e-12));
}

TEST_CASE("gamma does not depend on p") {
    const double expected = std::pow(100.0, 0.125) / std::sqrt(600.0);
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        CHECK(rel_close(derived_params(p, 100, 600).gamma, expected, 1e-12));
    }
}

TEST_CASE("p = 1 at the reference deltas is infeasible") {
    BoundInputs in = reference_point();
    in.p = 1.0;
    auto c = K_constants(in);
    REQUIRE(c.K1.has_value());
    CHECK(rel_close(*c.K1, -0.00079672088108351498, 1e-9));
    CHECK(!c.K1_positive);
    CHECK(!c.C0.has_value());
    CHECK(!c.delta_feasible);
    CHECK(c.gamma_feasible);

    auto f = feasibility_conditions(in);
    CHECK(rel_close(f.delta_threshold, 0.49859670510486917, 1e-12));
    CHECK(!f.delta_ok);
    CHECK_THROWS_AS(error_bound(c, 1e-4, 0.01), BoundUndefinedError);
}

TEST_CASE("error bound value at the reference point") {
    auto c = K_constants(reference_point());
    CHECK(rel_close(error_bound(c, 1e-4, 0.01), 0.0039360616127357085, 1e-12));
}

TEST_CASE("input validation") {
    BoundInputs in = reference_point();
    in.p = 0.0;
    CHECK_THROWS_AS(in.validate(), InvalidArgument);
    in = reference_point();
    in.p = 1.5;
    CHECK_THROWS_AS(in.validate(), InvalidArgument);
    in = reference_point();
    in.M = in.s;
    CHECK_THROWS_AS(in.validate(), InvalidArgument);
    in = reference_point();
    in.delta_M = -0.1;
    CHECK_THROWS_AS(in.validate(), InvalidArgument);
    in = reference_point();
    in.delta_sM = 1.0;
    CHECK_THROWS_AS(K_constants(in), InvalidArgument);
}

TEST_CASE("zero-policy sweep reproduces the frozen admissibility table") {
    const double p_grid[6] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    const int expected_cents[6] = {99, 99, 97, 92, 78, 64};
    const double expected_k1[6] = {0.02634229913, 0.02009763389, 0.02991788944,
                                   0.007372685087, 0.000422626045, 0.001243513429};
    for (int i = 0; i < 6; ++i) {
        auto sw = max_delta_sweep(p_grid[i], 100, 600, DeltaPolicy::Zero);
        REQUIRE(sw.delta_max.has_value());
        CHECK(static_cast<int>(std::lround(*sw.delta_max * 100)) == expected_cents[i]);
        CHECK(std::abs(*sw.K1_at_max - expected_k1[i]) <= 1e-8);
    }
}

TEST_CASE("K1 decreases strictly along every zero-policy sweep") {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        auto sw = max_delta_sweep(p, 100, 600, DeltaPolicy::Zero);
        double last = std::numeric_limits<double>::infinity();
        for (const auto& pt : sw.curve) {
            if (!pt.K1) continue;
            CHECK(*pt.K1 < last);
            last = *pt.K1;
        }
    }
}

TEST_CASE("degenerate and alternative sweeps") {
    auto tiny = max_delta_sweep(0.5, 100, 600, DeltaPolicy::Zero, 0.0, 0.5);
    CHECK(tiny.curve.size() == 1);
    CHECK(tiny.curve[0].delta == doctest::Approx(0.5));

    auto zero = max_delta_sweep(0.5, 100, 600, DeltaPolicy::Zero);
    auto equal = max_delta_sweep(0.5, 100, 600, DeltaPolicy::Equal);
    auto fixed = max_delta_sweep(0.5, 100, 600, DeltaPolicy::Fixed, 0.4);
    REQUIRE(equal.delta_max.has_value());
    REQUIRE(fixed.delta_max.has_value());
    CHECK(*equal.delta_max <= *zero.delta_max);
    CHECK(*fixed.delta_max <= *zero.delta_max);
}

TEST_CASE("bound curves: feasibility labels and monotonicity") {
    BoundInputs base = reference_point();
    auto curves = bound_curve({0.1, 0.3, 0.5, 0.7, 0.9, 1.0}, base, 0.01, 50);
    REQUIRE(curves.size() == 6);
    CHECK(!curves[5].feasible);
    CHECK(curves[5].reason == "delta condition fails");
    const BoundCurve* prev = nullptr;
    for (const auto& c : curves) {
        if (!c.feasible) continue;
        REQUIRE(c.eta.size() == 50);
        for (size_t i = 1; i < c.eta.size(); ++i) CHECK(c.bound[i] > c.bound[i - 1]);
        if (prev) {
            for (size_t i = 0; i < c.eta.size(); ++i)
                CHECK(prev->bound[i] <= c.bound[i] + 1e-15);
        }
        prev = &c;
    }
    auto cc = K_constants(base);
    CHECK(rel_close(curves[2].bound.back(), error_bound(cc, base.sigma, 0.01), 1e-12));
}
