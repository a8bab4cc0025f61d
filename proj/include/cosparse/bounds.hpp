#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosparse/errors.hpp"

namespace cosparse {

// Parameters of the recovery error bound. s is the head size, M the tail
// block size, the deltas are restricted-isometry constants at orders M and
// s+M, sigma the noise level.
struct BoundInputs {
    double p = 0.5;
    int s = 0;
    int M = 0;
    double delta_M = 0.0;
    double delta_sM = 0.0;
    double sigma = 0.0;

    void validate() const {
        if (!(p > 0.0) || p > 1.0) throw InvalidArgument("BoundInputs: need 0 < p <= 1");
        if (s < 1) throw InvalidArgument("BoundInputs: need s >= 1");
        if (M <= s) throw InvalidArgument("BoundInputs: need M > s");
        if (delta_M < 0.0 || delta_sM < 0.0)
            throw InvalidArgument("BoundInputs: deltas must be nonnegative");
        if (sigma < 0.0) throw InvalidArgument("BoundInputs: sigma must be nonnegative");
    }
};

struct DerivedParams {
    double rho = 0.0;    // s^(1/8) * M^((1-p)/p)
    double kappa = 0.0;  // s / M
    double gamma = 0.0;  // rho * M^(1/2 - 1/p), equal to s^(1/8) / sqrt(M)
};

struct BoundConstants {
    double rho = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;  // 1 - 4 gamma^2 - 2 kappa^((2-p)/p)
    double beta = 0.0;   // kappa^(1/p - 1/2)
    std::optional<double> K1;  // absent when alpha*(1-delta_sM) < 0
    double K2 = 0.0;
    std::optional<double> C0;  // 2/K1 when K1 > 0
    std::optional<double> C1;  // 2 K2/K1 when K1 > 0
    bool K1_positive = false;
    bool gamma_feasible = false;
    bool delta_feasible = false;
};

struct Feasibility {
    bool gamma_ok = false;       // gamma < sqrt(1/4 - kappa^((2-p)/p)/2)
    bool delta_ok = false;       // delta_sM < 1 - ((beta+gamma)^2/alpha)(1+delta_M)
    double gamma_threshold = 0;  // the sqrt above, 0 when its argument is negative
    double delta_threshold = 0;  // the rhs above, meaningful only when alpha > 0
};

// p in (0,1], s >= 1, M >= 1 (s < M not required here).
DerivedParams derived_params(double p, int s, int M);

// Both flags are false when alpha <= 0.
Feasibility feasibility_conditions(const BoundInputs& in);

// Throws InvalidArgument when delta_sM >= 1.
BoundConstants K_constants(const BoundInputs& in);

// 2*sigma/K1 + K2*eta/K1. Throws BoundUndefinedError unless K1 > 0.
double error_bound(const BoundConstants& c, double sigma, double eta);

enum class DeltaPolicy { Zero, Fixed, Equal };

struct SweepPoint {
    double delta = 0.0;          // delta_sM grid value
    double delta_M = 0.0;        // per the policy
    std::optional<double> K1;    // absent when out of domain
    bool feasible = false;       // K1 > 0 and gamma condition holds
};

struct SweepResult {
    std::vector<SweepPoint> curve;
    std::optional<double> delta_max;  // largest feasible grid point
    std::optional<double> K1_at_max;
};

// Sweeps delta_sM over {step, 2 step, ..., 1 - step}.
SweepResult max_delta_sweep(double p, int s, int M, DeltaPolicy policy,
                            double fixed_value = 0.0, double step = 0.01);

struct BoundCurve {
    double p = 0.0;
    bool feasible = false;
    std::string reason;               // set when infeasible
    std::vector<double> eta;          // sample points
    std::vector<double> bound;        // bound value per eta
};

// Bound as a function of eta for each p; infeasible p yields an annotated
// empty curve. eta samples are i*eta_max/samples, i = 1..samples.
std::vector<BoundCurve> bound_curve(const std::vector<double>& p_list,
                                    const BoundInputs& base, double eta_max,
                                    int samples);

}  // namespace cosparse
