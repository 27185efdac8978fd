#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fraclap/cutoff.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/norms.hpp"
#include "fraclap/ops.hpp"
#include "fraclap/params.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/presets.hpp"
#include "fraclap/suite.hpp"

namespace py = pybind11;
using namespace fraclap;

namespace {

Point to_point(const std::vector<double>& v) {
    Point p(static_cast<int>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) p[static_cast<int>(i)] = v[i];
    return p;
}

QuadratureSpec make_spec(double rel_tol, double abs_tol, int angular_rule, long mc_samples,
                         std::uint64_t seed, int n_threads) {
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = abs_tol;
    spec.angular_rule = angular_rule;
    spec.mc_samples = mc_samples;
    spec.rng_seed = seed;
    spec.n_threads = n_threads;
    spec.mc_rel_tol = 0.05;
    spec.mc_abs_tol = 1e-5;
    return spec;
}

} // namespace

PYBIND11_MODULE(_fraclap, m) {
    m.doc() = "Fractional Laplacian toolkit: nonlocal operators, weighted norms, and the "
              "fractional Poisson solver for the ball";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure");
    py::register_exception<SingularityError>(m, "SingularityError");
    py::register_exception<SamplerFailure>(m, "SamplerFailure");
    py::register_exception<FitError>(m, "FitError");
    py::register_exception<UnknownPreset>(m, "UnknownPreset");
    py::register_exception<DivergenceWarning>(m, "DivergenceWarning");
    py::register_exception<ConfigError>(m, "ConfigError");

    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("normalization_constant", &normalization_constant, py::arg("dim"), py::arg("order"));
    m.def(
        "holder_transfer_exponents",
        [](double alpha, double order) {
            const HolderTransfer t = holder_transfer_exponents(alpha, order);
            return py::make_tuple(t.gamma_is, t.beta, t.gamma_eta);
        },
        py::arg("alpha"), py::arg("order"));

    py::class_<FracParams>(m, "FracParams")
        .def(py::init<int, double>(), py::arg("dim"), py::arg("order"))
        .def_property_readonly("dim", &FracParams::dim)
        .def_property_readonly("order", &FracParams::order)
        .def_property_readonly("c_ns", &FracParams::c_ns);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init(&make_spec), py::arg("rel_tol") = 1e-7, py::arg("abs_tol") = 1e-11,
             py::arg("angular_rule") = 64, py::arg("mc_samples") = 1000000,
             py::arg("seed") = 42, py::arg("n_threads") = 1)
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("angular_rule", &QuadratureSpec::angular_rule)
        .def_readwrite("mc_samples", &QuadratureSpec::mc_samples)
        .def_readwrite("rng_seed", &QuadratureSpec::rng_seed);

    py::class_<CutoffField>(m, "CutoffField")
        .def(py::init<double>(), py::arg("delta"))
        .def_property_readonly("plateau_radius", &CutoffField::plateau_radius)
        .def_property_readonly("support_radius", &CutoffField::support_radius)
        .def("__call__",
             [](const CutoffField& eta, const std::vector<double>& x) { return eta(to_point(x)); });

    py::class_<RadialCutoff>(m, "RadialCutoff")
        .def(py::init<double>(), py::arg("tau"))
        .def_property_readonly("tau", &RadialCutoff::tau)
        .def("__call__", [](const RadialCutoff& t, double r) { return t(r); });

    py::class_<ScalarField>(m, "ScalarField")
        .def("__call__",
             [](const ScalarField& f, const std::vector<double>& x) { return f(to_point(x)); })
        .def_property_readonly("name", [](const ScalarField& f) { return f.name; });

    m.def("preset_field", &preset_field, py::arg("name"), py::arg("dim") = 2);

    m.def(
        "frac_laplacian",
        [](const ScalarField& u, const std::vector<double>& x, const FracParams& params,
           const QuadratureSpec& spec) {
            const OperatorResult r = frac_laplacian(u, to_point(x), params, spec);
            return py::make_tuple(r.value, r.err_est);
        },
        py::arg("field"), py::arg("x"), py::arg("params"), py::arg("spec") = QuadratureSpec{});

    m.def("gaussian_fourier_oracle", &gaussian_fourier_oracle, py::arg("s"), py::arg("xnorm"),
          py::arg("dim") = 2);

    m.def(
        "carre_du_champ",
        [](const ScalarField& f, const ScalarField& g, const std::vector<double>& x,
           const FracParams& params, const QuadratureSpec& spec) {
            const OperatorResult r = carre_du_champ(f, g, to_point(x), params, spec);
            return py::make_tuple(r.value, r.err_est);
        },
        py::arg("f"), py::arg("g"), py::arg("x"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "leibniz_residual",
        [](const ScalarField& f, const ScalarField& g, const std::vector<double>& x,
           const FracParams& params, const QuadratureSpec& spec) {
            const LeibnizResult r = leibniz_residual(f, g, to_point(x), params, spec);
            return py::make_tuple(r.residual, r.err_est, r.scale);
        },
        py::arg("f"), py::arg("g"), py::arg("x"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "diff_quotient",
        [](const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
           const std::vector<double>& x, const FracParams& params, const QuadratureSpec& spec) {
            const OperatorResult r = diff_quotient(u, eta, tau, to_point(x), params, spec);
            return py::make_tuple(r.value, r.err_est);
        },
        py::arg("u"), py::arg("eta"), py::arg("tau"), py::arg("x"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "gagliardo_functional",
        [](const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
           const FracParams& params, const QuadratureSpec& spec) {
            const McResult r = gagliardo_functional(u, eta, tau, params, spec);
            return py::make_tuple(r.value, r.stderr_);
        },
        py::arg("u"), py::arg("eta"), py::arg("tau"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "polarization_check",
        [](const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
           const FracParams& params, const QuadratureSpec& spec) {
            const PolarizationResult r = polarization_check(u, eta, tau, params, spec);
            return py::make_tuple(r.residual, r.stderr_, r.lhs, r.rhs);
        },
        py::arg("u"), py::arg("eta"), py::arg("tau"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "weighted_l1s_norm",
        [](const ScalarField& u, const FracParams& params, const QuadratureSpec& spec) {
            const SeminormResult r = weighted_l1s_norm(u, params, spec);
            return py::make_tuple(r.value, r.stderr_);
        },
        py::arg("u"), py::arg("params"), py::arg("spec") = QuadratureSpec{});

    m.def(
        "nonlocal_tail",
        [](const ScalarField& u, const std::vector<double>& x0, double R,
           const FracParams& params, const QuadratureSpec& spec) {
            const SeminormResult r = nonlocal_tail(u, to_point(x0), R, params, spec);
            return py::make_tuple(r.value, r.stderr_);
        },
        py::arg("u"), py::arg("x0"), py::arg("R"), py::arg("params"),
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "gagliardo_seminorm",
        [](const ScalarField& u, double domain, double s, double p, int dim,
           const QuadratureSpec& spec) {
            const SeminormResult r = gagliardo_seminorm(u, domain, s, p, dim, spec);
            return py::make_tuple(r.value, r.stderr_);
        },
        py::arg("u"), py::arg("domain"), py::arg("s"), py::arg("p") = 2.0, py::arg("dim") = 2,
        py::arg("spec") = QuadratureSpec{});

    m.def(
        "weighted_linf_norm",
        [](const ScalarField& u, const FracParams& params, const QuadratureSpec& spec) {
            return weighted_linf_norm(u, params, spec);
        },
        py::arg("u"), py::arg("params"), py::arg("spec") = QuadratureSpec{});

    m.def(
        "holder_exponent_estimate",
        [](const std::function<double(std::vector<double>)>& f, double domain, int dim,
           long pairs, std::uint64_t seed) {
            auto wrapped = [&f, dim](const Point& x) {
                std::vector<double> v(static_cast<size_t>(dim));
                for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] = x[i];
                return f(v);
            };
            const HolderFit fit = holder_exponent_estimate(wrapped, domain, dim, pairs, seed);
            return py::make_tuple(fit.exponent, fit.fit_err);
        },
        py::arg("f"), py::arg("domain"), py::arg("dim") = 2, py::arg("pairs") = 2000,
        py::arg("seed") = 42);

    py::class_<BallProblem>(m, "BallProblem")
        .def(py::init([](double rho, const ScalarField& h, const FracParams& params,
                         const QuadratureSpec& spec) {
                 return BallProblem{rho, h, params, spec};
             }),
             py::arg("rho"), py::arg("exterior"), py::arg("params"),
             py::arg("spec") = QuadratureSpec{})
        .def_readonly("rho", &BallProblem::rho);

    m.def(
        "poisson_kernel",
        [](double rho, const std::vector<double>& x, const std::vector<double>& y,
           const FracParams& params) { return poisson_kernel(rho, to_point(x), to_point(y), params); },
        py::arg("rho"), py::arg("x"), py::arg("y"), py::arg("params"));
    m.def("poisson_kernel_constant", &poisson_kernel_constant, py::arg("params"));
    m.def("kernel_mass_ratio", &kernel_mass_ratio, py::arg("params"));

    m.def(
        "kernel_normalization",
        [](double rho, const std::vector<double>& x, const FracParams& params,
           const QuadratureSpec& spec) {
            const IntegralResult r = kernel_normalization(rho, to_point(x), params, spec);
            return py::make_tuple(r.value, r.err);
        },
        py::arg("rho"), py::arg("x"), py::arg("params"), py::arg("spec") = QuadratureSpec{});

    m.def(
        "solve_dirichlet",
        [](const BallProblem& pb, const std::vector<double>& x) {
            const OperatorResult r = solve_dirichlet(pb, to_point(x));
            return py::make_tuple(r.value, r.err_est);
        },
        py::arg("problem"), py::arg("x"));

    m.def(
        "kernel_derivative",
        [](double rho, const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<int>& iota, const FracParams& params) {
            return kernel_derivative(rho, to_point(x), to_point(y),
                                     std::span<const int>(iota.data(), iota.size()), params);
        },
        py::arg("rho"), py::arg("x"), py::arg("y"), py::arg("iota"), py::arg("params"));

    m.def(
        "solution_derivative",
        [](const BallProblem& pb, const std::vector<double>& x, const std::vector<int>& iota) {
            const OperatorResult r = solution_derivative(
                pb, to_point(x), std::span<const int>(iota.data(), iota.size()));
            return py::make_tuple(r.value, r.err_est);
        },
        py::arg("problem"), py::arg("x"), py::arg("iota"));

    m.def(
        "wos_solve",
        [](const BallProblem& pb, const std::vector<double>& x, long n_samples,
           std::uint64_t seed) {
            const WosResult r = wos_solve(pb, to_point(x), n_samples, seed);
            return py::make_tuple(r.mean, r.stderr_);
        },
        py::arg("problem"), py::arg("x"), py::arg("n_samples") = 100000, py::arg("seed") = 42);

    m.def(
        "sharmonicity_residual",
        [](const BallProblem& pb, const std::vector<double>& x, const QuadratureSpec& op_spec) {
            return sharmonicity_residual(pb, to_point(x), op_spec);
        },
        py::arg("problem"), py::arg("x"), py::arg("op_spec") = QuadratureSpec{});

    m.def(
        "run_suite",
        [](const std::string& suite, int dim, std::uint64_t seed, long mc_samples,
           const std::string& out) {
            SuiteConfig cfg;
            cfg.suite = suite;
            cfg.dim = dim;
            cfg.seed = seed;
            cfg.mc_samples = mc_samples;
            cfg.out_path = out;
            const Report rep = run_suite(cfg);
            py::module_ json = py::module_::import("json");
            return json.attr("loads")(report_to_json(rep).dump());
        },
        py::arg("suite"), py::arg("dim") = 2, py::arg("seed") = 42,
        py::arg("mc_samples") = 200000, py::arg("out") = "");

    m.attr("__version__") = "0.1.0";
}
