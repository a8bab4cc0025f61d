#include "cosparse/bounds.hpp"

#include <cmath>

namespace cosparse {

DerivedParams derived_params(double p, int s, int M) {
    if (!(p > 0.0) || p > 1.0) throw InvalidArgument("derived_params: need 0 < p <= 1");
    if (s < 1 || M < 1) throw InvalidArgument("derived_params: need s, M >= 1");
    DerivedParams out;
    out.rho = std::pow(static_cast<double>(s), 0.125) *
              std::pow(static_cast<double>(M), (1.0 - p) / p);
    out.kappa = static_cast<double>(s) / static_cast<double>(M);
    out.gamma = out.rho * std::pow(static_cast<double>(M), 0.5 - 1.0 / p);
    return out;
}

namespace {

struct Parts {
    DerivedParams dp;
    double kpow = 0.0;  // kappa^((2-p)/p)
    double alpha = 0.0;
    double beta = 0.0;
};

Parts compute_parts(const BoundInputs& in) {
    Parts pr;
    pr.dp = derived_params(in.p, in.s, in.M);
    pr.kpow = std::pow(pr.dp.kappa, (2.0 - in.p) / in.p);
    pr.alpha = 1.0 - 4.0 * pr.dp.gamma * pr.dp.gamma - 2.0 * pr.kpow;
    pr.beta = std::pow(pr.dp.kappa, 1.0 / in.p - 0.5);
    return pr;
}

}  // namespace

Feasibility feasibility_conditions(const BoundInputs& in) {
    in.validate();
    Parts pr = compute_parts(in);
    Feasibility f;
    double thr2 = 0.25 - pr.kpow / 2.0;
    f.gamma_threshold = thr2 > 0.0 ? std::sqrt(thr2) : 0.0;
    if (pr.alpha <= 0.0) return f;  // both conditions fail
    f.gamma_ok = thr2 > 0.0 && pr.dp.gamma < f.gamma_threshold;
    double bg = pr.beta + pr.dp.gamma;
    f.delta_threshold = 1.0 - (bg * bg / pr.alpha) * (1.0 + in.delta_M);
    f.delta_ok = in.delta_sM < f.delta_threshold;
    return f;
}

BoundConstants K_constants(const BoundInputs& in) {
    in.validate();
    if (in.delta_sM >= 1.0)
        throw InvalidArgument("K_constants: need delta_sM < 1");
    Parts pr = compute_parts(in);
    BoundConstants c;
    c.rho = pr.dp.rho;
    c.kappa = pr.dp.kappa;
    c.gamma = pr.dp.gamma;
    c.alpha = pr.alpha;
    c.beta = pr.beta;
    double a1 = pr.alpha * (1.0 - in.delta_sM);
    if (a1 >= 0.0)
        c.K1 = std::sqrt(a1) - (pr.beta + pr.dp.gamma) * std::sqrt(1.0 + in.delta_M);
    c.K2 = pr.dp.gamma *
           (2.0 * std::sqrt(1.0 - in.delta_sM) + std::sqrt(1.0 + in.delta_M));
    c.K1_positive = c.K1.has_value() && *c.K1 > 0.0;
    if (c.K1_positive) {
        c.C0 = 2.0 / *c.K1;
        c.C1 = 2.0 * c.K2 / *c.K1;
    }
    Feasibility f = feasibility_conditions(in);
    c.gamma_feasible = f.gamma_ok;
    c.delta_feasible = f.delta_ok;
    return c;
}

double error_bound(const BoundConstants& c, double sigma, double eta) {
    if (!c.K1_positive)
        throw BoundUndefinedError("error_bound: K1 is not positive");
    return 2.0 * sigma / *c.K1 + c.K2 * eta / *c.K1;
}

SweepResult max_delta_sweep(double p, int s, int M, DeltaPolicy policy,
                            double fixed_value, double step) {
    if (!(step > 0.0) || step >= 1.0)
        throw InvalidArgument("max_delta_sweep: need 0 < step < 1");
    SweepResult res;
    const int kmax = static_cast<int>(std::floor((1.0 - step) / step + 1e-9));
    for (int k = 1; k <= kmax; ++k) {
        double delta = k * step;
        BoundInputs in;
        in.p = p;
        in.s = s;
        in.M = M;
        in.delta_sM = delta;
        switch (policy) {
            case DeltaPolicy::Zero: in.delta_M = 0.0; break;
            case DeltaPolicy::Fixed: in.delta_M = fixed_value; break;
            case DeltaPolicy::Equal: in.delta_M = delta; break;
        }
        BoundConstants c = K_constants(in);
        SweepPoint pt;
        pt.delta = delta;
        pt.delta_M = in.delta_M;
        pt.K1 = c.K1;
        pt.feasible = c.K1_positive && c.gamma_feasible;
        if (pt.feasible) {
            res.delta_max = delta;
            res.K1_at_max = *c.K1;
        }
        res.curve.push_back(pt);
    }
    return res;
}

std::vector<BoundCurve> bound_curve(const std::vector<double>& p_list,
                                    const BoundInputs& base, double eta_max,
                                    int samples) {
    if (!(eta_max > 0.0)) throw InvalidArgument("bound_curve: need eta_max > 0");
    if (samples < 1) throw InvalidArgument("bound_curve: need samples >= 1");
    std::vector<BoundCurve> out;
    for (double p : p_list) {
        BoundInputs in = base;
        in.p = p;
        BoundCurve bc;
        bc.p = p;
        BoundConstants c = K_constants(in);
        Feasibility f = feasibility_conditions(in);
        if (!(f.gamma_ok && f.delta_ok && c.K1_positive)) {
            bc.feasible = false;
            if (!f.gamma_ok)
                bc.reason = "gamma condition fails";
            else if (!f.delta_ok)
                bc.reason = "delta condition fails";
            else
                bc.reason = "K1 not positive";
            out.push_back(bc);
            continue;
        }
        bc.feasible = true;
        for (int i = 1; i <= samples; ++i) {
            double eta = eta_max * i / samples;
            bc.eta.push_back(eta);
            bc.bound.push_back(error_bound(c, in.sigma, eta));
        }
        out.push_back(bc);
    }
    return out;
}

}  // namespace cosparse
