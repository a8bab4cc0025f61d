#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosparse/bounds.hpp"
#include "cosparse/model.hpp"
#include "cosparse/rip.hpp"
#include "cosparse/solvers.hpp"
#include "cosparse/suite.hpp"
#include "cosparse/version.hpp"

namespace py = pybind11;
using namespace cosparse;

PYBIND11_MODULE(_core, m) {
    m.doc() = "cosparse analysis-model recovery core";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "CosparseError");

    py::class_<AnalysisOperator>(m, "AnalysisOperator")
        .def_readonly("omega", &AnalysisOperator::omega)
        .def_readonly("frame_lo", &AnalysisOperator::frame_lo)
        .def_readonly("frame_hi", &AnalysisOperator::frame_hi)
        .def_readonly("parseval", &AnalysisOperator::parseval)
        .def_property_readonly("n", &AnalysisOperator::n)
        .def_property_readonly("d", &AnalysisOperator::d);

    py::class_<CosparseSignal>(m, "CosparseSignal")
        .def_readonly("x", &CosparseSignal::x)
        .def_readonly("cosupport", &CosparseSignal::cosupport)
        .def_readonly("cosparsity", &CosparseSignal::cosparsity);

    py::class_<RecoveryProblem>(m, "RecoveryProblem")
        .def_readonly("A", &RecoveryProblem::A)
        .def_readonly("omega", &RecoveryProblem::omega)
        .def_readonly("y", &RecoveryProblem::y)
        .def_readonly("sigma", &RecoveryProblem::sigma);

    py::class_<SupportPartition>(m, "SupportPartition")
        .def_readonly("s", &SupportPartition::s)
        .def_readonly("M", &SupportPartition::M)
        .def_readonly("head", &SupportPartition::head)
        .def_readonly("blocks", &SupportPartition::blocks)
        .def_readonly("sorted_values", &SupportPartition::sorted_values);

    py::class_<SolverResult>(m, "SolverResult")
        .def_readonly("x_hat", &SolverResult::x_hat)
        .def_readonly("objective_trace", &SolverResult::objective_trace)
        .def_readonly("stage_starts", &SolverResult::stage_starts)
        .def_readonly("iterations", &SolverResult::iterations)
        .def_readonly("converged", &SolverResult::converged)
        .def_readonly("residual", &SolverResult::residual)
        .def_readonly("analysis_lp", &SolverResult::analysis_lp);

    py::class_<IrlsOptions>(m, "IrlsOptions")
        .def(py::init<>())
        .def_readwrite("eps0", &IrlsOptions::eps0)
        .def_readwrite("eps_factor", &IrlsOptions::eps_factor)
        .def_readwrite("eps_stages", &IrlsOptions::eps_stages)
        .def_readwrite("lambda0", &IrlsOptions::lambda0)
        .def_readwrite("lambda_growth", &IrlsOptions::lambda_growth)
        .def_readwrite("lambda_cap", &IrlsOptions::lambda_cap)
        .def_readwrite("feas_tol", &IrlsOptions::feas_tol)
        .def_readwrite("max_inner", &IrlsOptions::max_inner)
        .def_readwrite("inner_xtol", &IrlsOptions::inner_xtol)
        .def_readwrite("bisection_steps", &IrlsOptions::bisection_steps);

    py::class_<AbpOptions>(m, "AbpOptions")
        .def(py::init<>())
        .def_readwrite("rho", &AbpOptions::rho)
        .def_readwrite("over_relax", &AbpOptions::over_relax)
        .def_readwrite("max_iter", &AbpOptions::max_iter)
        .def_readwrite("tol_abs", &AbpOptions::tol_abs)
        .def_readwrite("tol_rel", &AbpOptions::tol_rel)
        .def_readwrite("feas_tol", &AbpOptions::feas_tol)
        .def_readwrite("adapt_every", &AbpOptions::adapt_every)
        .def_readwrite("adapt_ratio", &AbpOptions::adapt_ratio)
        .def_readwrite("rho_min", &AbpOptions::rho_min)
        .def_readwrite("rho_max", &AbpOptions::rho_max);

    py::class_<RipWitness>(m, "RipWitness")
        .def_readonly("support", &RipWitness::support)
        .def_readonly("coeffs", &RipWitness::coeffs)
        .def_readonly("lambda_", &RipWitness::lambda);

    py::class_<RipEstimate>(m, "RipEstimate")
        .def_readonly("order", &RipEstimate::order)
        .def_readonly("delta", &RipEstimate::delta)
        .def_readonly("method", &RipEstimate::method)
        .def_readonly("support_count", &RipEstimate::support_count)
        .def_readonly("trials", &RipEstimate::trials)
        .def_readonly("lambda_min", &RipEstimate::lambda_min)
        .def_readonly("lambda_max", &RipEstimate::lambda_max)
        .def_readonly("witness_low", &RipEstimate::witness_low)
        .def_readonly("witness_high", &RipEstimate::witness_high);

    py::class_<BoundInputs>(m, "BoundInputs")
        .def(py::init([](double p, int s, int M, double delta_M, double delta_sM,
                         double sigma) {
                 BoundInputs in;
                 in.p = p;
                 in.s = s;
                 in.M = M;
                 in.delta_M = delta_M;
                 in.delta_sM = delta_sM;
                 in.sigma = sigma;
                 in.validate();
                 return in;
             }),
             py::arg("p"), py::arg("s"), py::arg("M"), py::arg("delta_M") = 0.0,
             py::arg("delta_sM") = 0.0, py::arg("sigma") = 0.0)
        .def_readwrite("p", &BoundInputs::p)
        .def_readwrite("s", &BoundInputs::s)
        .def_readwrite("M", &BoundInputs::M)
        .def_readwrite("delta_M", &BoundInputs::delta_M)
        .def_readwrite("delta_sM", &BoundInputs::delta_sM)
        .def_readwrite("sigma", &BoundInputs::sigma);

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("rho", &DerivedParams::rho)
        .def_readonly("kappa", &DerivedParams::kappa)
        .def_readonly("gamma", &DerivedParams::gamma);

    py::class_<BoundConstants>(m, "BoundConstants")
        .def_readonly("rho", &BoundConstants::rho)
        .def_readonly("kappa", &BoundConstants::kappa)
        .def_readonly("gamma", &BoundConstants::gamma)
        .def_readonly("alpha", &BoundConstants::alpha)
        .def_readonly("beta", &BoundConstants::beta)
        .def_readonly("K1", &BoundConstants::K1)
        .def_readonly("K2", &BoundConstants::K2)
        .def_readonly("C0", &BoundConstants::C0)
        .def_readonly("C1", &BoundConstants::C1)
        .def_readonly("K1_positive", &BoundConstants::K1_positive)
        .def_readonly("gamma_feasible", &BoundConstants::gamma_feasible)
        .def_readonly("delta_feasible", &BoundConstants::delta_feasible);

    py::class_<Feasibility>(m, "Feasibility")
        .def_readonly("gamma_ok", &Feasibility::gamma_ok)
        .def_readonly("delta_ok", &Feasibility::delta_ok)
        .def_readonly("gamma_threshold", &Feasibility::gamma_threshold)
        .def_readonly("delta_threshold", &Feasibility::delta_threshold);

    py::enum_<DeltaPolicy>(m, "DeltaPolicy")
        .value("Zero", DeltaPolicy::Zero)
        .value("Fixed", DeltaPolicy::Fixed)
        .value("Equal", DeltaPolicy::Equal);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("delta", &SweepPoint::delta)
        .def_readonly("delta_M", &SweepPoint::delta_M)
        .def_readonly("K1", &SweepPoint::K1)
        .def_readonly("feasible", &SweepPoint::feasible);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("curve", &SweepResult::curve)
        .def_readonly("delta_max", &SweepResult::delta_max)
        .def_readonly("K1_at_max", &SweepResult::K1_at_max);

    py::class_<SuiteConfig>(m, "SuiteConfig")
        .def(py::init<>())
        .def_readwrite("seed_lo", &SuiteConfig::seed_lo)
        .def_readwrite("seed_hi", &SuiteConfig::seed_hi)
        .def_readwrite("families", &SuiteConfig::families);

    py::class_<KindStats>(m, "KindStats")
        .def_readonly("name", &KindStats::name)
        .def_readonly("gating", &KindStats::gating)
        .def_readonly("checked", &KindStats::checked)
        .def_readonly("excluded", &KindStats::excluded)
        .def_readonly("resolved", &KindStats::resolved)
        .def_readonly("violations", &KindStats::violations);

    py::class_<SuiteResult>(m, "SuiteResult")
        .def_readonly("stats", &SuiteResult::stats)
        .def("gating_violations", &SuiteResult::gating_violations)
        .def("ok", &SuiteResult::ok)
        .def("summary_text", &SuiteResult::summary_text)
        .def("findings_csv", &SuiteResult::findings_csv);

    m.def("make_analysis_operator", &make_analysis_operator, py::arg("omega"),
          py::arg("parseval_tol") = kDefaultParsevalTol);
    m.def("make_random_parseval_frame", &make_random_parseval_frame, py::arg("n"),
          py::arg("d"), py::arg("seed"));
    m.def("identity_operator", &identity_operator, py::arg("d"));
    m.def("analyze_cosupport", &analyze_cosupport, py::arg("op"), py::arg("x"),
          py::arg("zero_tol") = kDefaultZeroTol);
    m.def("generate_cosparse_signal", &generate_cosparse_signal, py::arg("op"),
          py::arg("ell"), py::arg("seed"), py::arg("zero_tol") = kDefaultZeroTol);
    m.def("make_gaussian_measurement", &make_gaussian_measurement, py::arg("m"),
          py::arg("d"), py::arg("seed"), py::arg("normalize") = true);
    m.def("build_problem", &build_problem, py::arg("A"), py::arg("op"), py::arg("truth"),
          py::arg("sigma"), py::arg("seed"));
    m.def("partition_supports", &partition_supports, py::arg("z"), py::arg("s"),
          py::arg("M"));
    m.def("lp_norm", &lp_norm, py::arg("x"), py::arg("p"));
    m.def("lp_norm_pow", &lp_norm_pow, py::arg("x"), py::arg("p"));
    m.def("compute_eta_best", &compute_eta_best, py::arg("op"), py::arg("x"), py::arg("s"));
    m.def("compute_eta_explicit", &compute_eta_explicit, py::arg("op"), py::arg("x"),
          py::arg("head"));

    m.def("solve_irls_lp", &solve_irls_lp, py::arg("prob"), py::arg("p"),
          py::arg("opts") = IrlsOptions());
    m.def("solve_abp_l1", &solve_abp_l1, py::arg("prob"), py::arg("opts") = AbpOptions());
    m.def("solve_l0_exhaustive", &solve_l0_exhaustive, py::arg("prob"),
          py::arg("min_cosparsity") = 0, py::arg("feas_tol") = 1e-6,
          py::arg("zero_tol") = kDefaultZeroTol);

    m.def("omega_rip_exact", &omega_rip_exact, py::arg("A"), py::arg("om"), py::arg("s"),
          py::arg("support_cap") = kDefaultSupportCap);
    m.def("omega_rip_sampled", &omega_rip_sampled, py::arg("A"), py::arg("om"),
          py::arg("s"), py::arg("trials"), py::arg("seed"));
    m.def("rip_ratio", &rip_ratio, py::arg("A"), py::arg("om"), py::arg("support"),
          py::arg("coeffs"));

    m.def("derived_params", &derived_params, py::arg("p"), py::arg("s"), py::arg("M"));
    m.def("feasibility_conditions", &feasibility_conditions, py::arg("inputs"));
    m.def("K_constants", &K_constants, py::arg("inputs"));
    m.def("error_bound", &error_bound, py::arg("constants"), py::arg("sigma"),
          py::arg("eta"));
    m.def("max_delta_sweep", &max_delta_sweep, py::arg("p"), py::arg("s"), py::arg("M"),
          py::arg("policy"), py::arg("fixed_value") = 0.0, py::arg("step") = 0.01);

    m.def("run_suite", &run_suite, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
}
