#include "fraclap/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "fraclap/cutoff.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/norms.hpp"
#include "fraclap/ops.hpp"
#include "fraclap/params.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/presets.hpp"
#include "fraclap/rng.hpp"

namespace fraclap {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;

using json = nlohmann::json;

struct CheckOutcome {
    double value = 0;
    double oracle = 0;
    double err_est = 0;
    double tol = 0;
    std::string note;
};

/// Runs one check with wall-time accounting; any exception becomes a
/// failed record carrying the diagnostic.
void run_check(Report& rep, const std::string& id, const json& inputs,
               const std::function<CheckOutcome()>& fn) {
    CheckRecord rec;
    rec.id = id;
    rec.suite = rep.config.value("suite", "");
    rec.inputs = inputs;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const CheckOutcome out = fn();
        rec.value = out.value;
        rec.oracle = out.oracle;
        rec.err_est = out.err_est;
        rec.tol = out.tol;
        rec.pass = std::abs(out.value - out.oracle) <= out.tol;
        rec.note = out.note;
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.note = std::string("error: ") + e.what();
        rec.tol = 0;
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    rep.records.push_back(std::move(rec));
}

QuadratureSpec tight_spec(const SuiteConfig& cfg, int angular_default) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-12;
    spec.angular_rule = cfg.angular_rule > 0 ? cfg.angular_rule : angular_default;
    spec.mc_samples = cfg.mc_samples;
    spec.rng_seed = cfg.seed;
    spec.n_threads = cfg.n_threads;
    return spec;
}

// ---------------------------------------------------------------------------
// norms suite: closed-form constants and weighted norms.
// ---------------------------------------------------------------------------
void suite_norms(Report& rep, const SuiteConfig& cfg) {
    run_check(rep, "normalization_constant_2_0.5", {{"dim", 2}, {"s", 0.5}}, [&] {
        CheckOutcome out;
        out.value = normalization_constant(2, 0.5);
        out.oracle = 1.0 / (2.0 * kPi);
        out.tol = 1e-10 * out.oracle;
        return out;
    });
    run_check(rep, "gamma_half", {{"x", 0.5}}, [&] {
        CheckOutcome out;
        out.value = gamma_fn(0.5);
        out.oracle = std::sqrt(kPi);
        out.tol = 1e-12 * out.oracle;
        return out;
    });
    const FracParams params(cfg.dim, 0.5);
    const QuadratureSpec spec = tight_spec(cfg, 64);
    const ScalarField one = preset_field("constant", cfg.dim);
    for (double R : {0.5, 1.0, 2.0}) {
        run_check(rep, "tail_constant_R" + std::to_string(R), {{"R", R}, {"dim", 2}, {"s", 0.5}},
                  [&, R] {
                      CheckOutcome out;
                      out.value =
                          nonlocal_tail(one, Point::zero(cfg.dim), R, params, spec).value;
                      out.oracle = 2.0 * kPi;
                      out.tol = 1e-6;
                      return out;
                  });
    }
    run_check(rep, "l1s_constant", {{"dim", 2}, {"s", 0.5}}, [&] {
        CheckOutcome out;
        out.value = weighted_l1s_norm(one, params, spec).value;
        out.oracle = 4.0 * kPi * kPi / (3.0 * std::sqrt(3.0));
        out.tol = 1e-4;
        return out;
    });
    run_check(rep, "holder_exponent_identity", {{"alpha", 0.8}, {"s", 0.75}}, [&] {
        const HolderTransfer t = holder_transfer_exponents(0.8, 0.75);
        CheckOutcome out;
        out.value = t.gamma_eta;
        out.oracle = t.gamma_is * t.beta; // exact identity for s > 1/2
        out.tol = 1e-14;
        return out;
    });
}

// ---------------------------------------------------------------------------
// leibniz suite: Fourier-multiplier agreement and the Leibniz defect.
// ---------------------------------------------------------------------------
void suite_leibniz(Report& rep, const SuiteConfig& cfg,
                   const std::vector<double>& s_values) {
    const int dim = cfg.dim;
    const ScalarField gaussian = preset_field("gaussian", dim);
    QuadratureSpec spec = tight_spec(cfg, 64);

    for (double s : s_values) {
        const FracParams params(dim, s);
        for (int k = 0; k < 10; ++k) {
            const double r = 0.6 * k / 9.0;
            const double th = 2.0 * kPi * k / 10.0 + 0.3;
            Point x(dim);
            x[0] = r * std::cos(th);
            x[1] = r * std::sin(th);
            run_check(rep, "fourier_agreement_s" + std::to_string(s) + "_p" + std::to_string(k),
                      {{"s", s}, {"r", r}}, [&, x, s] {
                          CheckOutcome out;
                          out.value = frac_laplacian(gaussian, x, params, spec).value;
                          out.oracle = gaussian_fourier_oracle(s, x.norm(), dim);
                          out.err_est = 0;
                          out.tol = 1e-5 * std::abs(out.oracle);
                          return out;
                      });
        }
    }
    run_check(rep, "fourier_center_pi", {{"s", 0.5}}, [&] {
        const FracParams params(dim, 0.5);
        CheckOutcome out;
        out.value = frac_laplacian(gaussian, Point::zero(dim), params, spec).value;
        out.oracle = kPi;
        out.tol = 1e-5;
        return out;
    });

    for (double s : s_values) {
        const FracParams params(dim, s);
        std::mt19937_64 g = make_stream(cfg.seed, 101 + static_cast<std::uint64_t>(1e3 * s));
        for (int k = 0; k < 20; ++k) {
            Point cf = sample_ball(dim, 0.4, g);
            Point cg = sample_ball(dim, 0.4, g);
            const double wf = 0.7 + 0.6 * uniform01(g);
            const double wg = 0.7 + 0.6 * uniform01(g);
            const double af = 0.5 + uniform01(g);
            const double ag = 0.5 + uniform01(g);
            const Point x = sample_ball(dim, 0.6, g);
            run_check(rep, "leibniz_s" + std::to_string(s) + "_p" + std::to_string(k),
                      {{"s", s}, {"k", k}}, [&, cf, cg, wf, wg, af, ag, x, s] {
                          const ScalarField f = gaussian_bump(cf, wf, af);
                          const ScalarField gg = gaussian_bump(cg, wg, ag);
                          const LeibnizResult r = leibniz_residual(f, gg, x, params, spec);
                          CheckOutcome out;
                          out.value = r.residual;
                          out.oracle = 0.0;
                          out.err_est = r.err_est;
                          out.tol = 1e-5 * r.scale;
                          out.note = "scale=" + std::to_string(r.scale);
                          return out;
                      });
        }
    }
}

// ---------------------------------------------------------------------------
// polarization suite: int (eta u) D^s u = G/2.
// ---------------------------------------------------------------------------
void suite_polarization(Report& rep, const SuiteConfig& cfg,
                        const std::vector<std::string>& presets) {
    const int dim = cfg.dim;
    const FracParams params(dim, 0.5);
    const CutoffField eta(0.1);
    QuadratureSpec spec = tight_spec(cfg, 48);
    spec.mc_samples = std::max<long>(cfg.mc_samples, 200000);
    spec.mc_rel_tol = 0.02;
    spec.mc_abs_tol = 1e-5;

    for (const std::string& name : presets) {
        for (double tv : {0.4, 0.1}) {
            run_check(rep, "polarization_" + name + "_tau" + std::to_string(tv),
                      {{"preset", name}, {"tau", tv}, {"s", 0.5}}, [&, name, tv] {
                          const ScalarField u = preset_field(name, dim);
                          const RadialCutoff tau(tv);
                          const PolarizationResult r =
                              polarization_check(u, eta, tau, params, spec);
                          CheckOutcome out;
                          out.value = r.residual;
                          out.oracle = 0.0;
                          out.err_est = r.stderr_;
                          out.tol = 3.0 * r.stderr_;
                          out.note = "lhs=" + std::to_string(r.lhs) +
                                     " rhs=" + std::to_string(r.rhs);
                          return out;
                      });
        }
    }
}

// ---------------------------------------------------------------------------
// gagliardo-limit suite: G monotone in tau and G(0.05) near the squared
// H^s seminorm of eta*u.
// ---------------------------------------------------------------------------
void suite_gagliardo_limit(Report& rep, const SuiteConfig& cfg,
                           const std::vector<std::string>& presets) {
    const int dim = cfg.dim;
    const FracParams params(dim, 0.5);
    const CutoffField eta(0.1);
    QuadratureSpec spec = tight_spec(cfg, 48);
    spec.mc_samples = std::max<long>(cfg.mc_samples, 2000000);
    spec.mc_rel_tol = 0.02;
    spec.mc_abs_tol = 1e-5;
    const std::vector<double> taus{0.4, 0.2, 0.1, 0.05};

    for (const std::string& name : presets) {
        const ScalarField u = preset_field(name, dim);
        std::vector<McResult> gs;
        bool failed = false;
        for (double tv : taus) {
            try {
                gs.push_back(gagliardo_functional(u, eta, RadialCutoff(tv), params, spec));
            } catch (const std::exception&) {
                failed = true;
                break;
            }
        }
        for (size_t i = 0; i + 1 < taus.size() && !failed; ++i) {
            run_check(rep,
                      "g_monotone_" + name + "_" + std::to_string(taus[i]) + "_to_" +
                          std::to_string(taus[i + 1]),
                      {{"preset", name}, {"tau_hi", taus[i]}, {"tau_lo", taus[i + 1]}}, [&, i] {
                          CheckOutcome out;
                          // Violation of G(tau smaller) >= G(tau larger).
                          out.value = std::max(0.0, gs[i].value - gs[i + 1].value);
                          out.oracle = 0.0;
                          out.tol = 3.0 * (gs[i].stderr_ + gs[i + 1].stderr_);
                          out.note = "G_hi=" + std::to_string(gs[i].value) +
                                     " G_lo=" + std::to_string(gs[i + 1].value);
                          return out;
                      });
        }
        run_check(rep, "g_limit_" + name, {{"preset", name}, {"tau", 0.05}, {"s", 0.5}},
                  [&, name] {
                      const ScalarField w = field_product(cutoff_as_field(eta), u);
                      QuadratureSpec spec2 = spec;
                      spec2.rng_seed = spec.rng_seed + 555; // independent stream
                      const SeminormResult full = gagliardo_sq_full(w, 0.5, dim, spec2);
                      CheckOutcome out;
                      out.value = failed || gs.empty() ? 0.0 : gs.back().value;
                      out.oracle = full.value;
                      out.err_est = (gs.empty() ? 0.0 : gs.back().stderr_) + full.stderr_;
                      out.tol = 0.05 * full.value;
                      return out;
                  });
    }
}

// ---------------------------------------------------------------------------
// holder-transfer suite: empirical exponents of I_s(f,g) and eta I_s(eta,f).
// ---------------------------------------------------------------------------
void suite_holder_transfer(Report& rep, const SuiteConfig& cfg) {
    const int dim = cfg.dim;
    const std::vector<std::pair<double, double>> cases{{0.4, 0.25}, {0.8, 0.5}, {0.9, 0.75}};
    QuadratureSpec spec = tight_spec(cfg, 48);
    spec.rel_tol = 1e-6;
    spec.abs_tol = 1e-9;

    for (const auto& [alpha, s] : cases) {
        const FracParams params(dim, s);
        const HolderTransfer t = holder_transfer_exponents(alpha, s);
        const ScalarField f = preset_field("holder-cusp(" + std::to_string(alpha) + ")", dim);
        const ScalarField g = preset_field("gaussian", dim);

        run_check(rep, "transfer_is_a" + std::to_string(alpha) + "_s" + std::to_string(s),
                  {{"alpha", alpha}, {"s", s}, {"gamma", t.gamma_is}}, [&, alpha, s] {
                      auto F = [&](const Point& x) {
                          return carre_du_champ(f, g, x, params, spec).value;
                      };
                      const HolderFit fit =
                          holder_exponent_estimate(F, 0.5, dim, 700, cfg.seed + 17);
                      CheckOutcome out;
                      out.value = std::max(0.0, t.gamma_is - fit.exponent); // one-sided
                      out.oracle = 0.0;
                      out.tol = 0.05;
                      out.note = "exponent=" + std::to_string(fit.exponent) +
                                 " target=" + std::to_string(t.gamma_is);
                      return out;
                  });
        run_check(rep, "transfer_eta_a" + std::to_string(alpha) + "_s" + std::to_string(s),
                  {{"alpha", alpha}, {"s", s}, {"gamma", t.gamma_eta}}, [&, alpha, s] {
                      const CutoffField eta(0.1);
                      const ScalarField ef = cutoff_as_field(eta);
                      auto F = [&](const Point& x) {
                          const double e = eta(x);
                          if (e == 0.0) return 0.0;
                          return e * carre_du_champ(ef, f, x, params, spec).value;
                      };
                      const HolderFit fit =
                          holder_exponent_estimate(F, 0.5, dim, 700, cfg.seed + 29);
                      CheckOutcome out;
                      out.value = std::max(0.0, t.gamma_eta - fit.exponent);
                      out.oracle = 0.0;
                      out.tol = 0.05;
                      out.note = "exponent=" + std::to_string(fit.exponent) +
                                 " target=" + std::to_string(t.gamma_eta);
                      return out;
                  });
    }
}

// ---------------------------------------------------------------------------
// poisson suite: normalization, quadrature vs Monte Carlo, s-harmonicity.
// ---------------------------------------------------------------------------
void suite_poisson(Report& rep, const SuiteConfig& cfg) {
    const int dim = cfg.dim;
    const double rho = 0.8; // the delta = 0.4 radii schedule
    const FracParams params(dim, 0.5);
    QuadratureSpec spec = tight_spec(cfg, 256);

    for (int k = 0; k < 10; ++k) {
        const double frac = k / 9.0 * 0.9; // includes |x| = 0.9 rho
        const double th = 0.7 * k;
        Point x(dim);
        x[0] = frac * rho * std::cos(th);
        x[1] = frac * rho * std::sin(th);
        run_check(rep, "kernel_normalization_p" + std::to_string(k),
                  {{"rho", rho}, {"frac", frac}}, [&, x] {
                      const IntegralResult r = kernel_normalization(rho, x, params, spec);
                      CheckOutcome out;
                      out.value = r.value;
                      out.oracle = 1.0;
                      out.err_est = r.err;
                      out.tol = 1e-4;
                      return out;
                  });
    }

    struct Datum {
        std::string name;
        Point x;
        int angular;
    };
    const std::vector<Datum> data{
        {"gaussian", Point{0.25, 0.1}, 256},
        {"halfspace-indicator", Point{0.0, 0.0}, 1024},
        {"bump(1.6)", Point{-0.3, 0.15}, 256},
        {"constant", Point{0.2, -0.35}, 256},
        {"halfspace-indicator", Point{0.15, 0.2}, 2048},
    };
    for (size_t i = 0; i < data.size(); ++i) {
        run_check(rep, "solve_vs_wos_" + std::to_string(i) + "_" + data[i].name,
                  {{"datum", data[i].name}}, [&, i] {
                      QuadratureSpec sp = spec;
                      sp.angular_rule = data[i].angular;
                      BallProblem pb{rho, preset_field(data[i].name, dim), params, sp};
                      const OperatorResult sol = solve_dirichlet(pb, data[i].x);
                      const WosResult wos = wos_solve(pb, data[i].x, cfg.mc_samples, cfg.seed + i);
                      CheckOutcome out;
                      out.value = sol.value;
                      out.oracle = wos.mean;
                      out.err_est = sol.err_est + wos.stderr_;
                      out.tol = 3.0 * (wos.stderr_ + sol.err_est) + 1e-12;
                      out.note = "wos_stderr=" + std::to_string(wos.stderr_);
                      return out;
                  });
    }
    run_check(rep, "halfspace_center_exact", {{"rho", rho}}, [&] {
        QuadratureSpec sp = spec;
        sp.angular_rule = 1024;
        BallProblem pb{rho, preset_field("halfspace-indicator", dim), params, sp};
        CheckOutcome out;
        out.value = solve_dirichlet(pb, Point::zero(dim)).value;
        out.oracle = 0.5;
        out.tol = 1e-4;
        return out;
    });

    // s-harmonicity of the materialized solution for a smooth radial datum.
    QuadratureSpec solve_spec = spec.with_tols(1e-9, 1e-13);
    solve_spec.angular_rule = 128;
    BallProblem pb{rho, preset_field("gaussian", dim), params, solve_spec};
    QuadratureSpec op_spec;
    op_spec.rel_tol = 1e-7;
    op_spec.abs_tol = 1e-10;
    op_spec.angular_rule = 64;
    for (int k = 0; k < 5; ++k) {
        const double frac = 0.8 * k / 4.0;
        const double th = 1.1 * k + 0.4;
        Point x(dim);
        x[0] = frac * rho * std::cos(th);
        x[1] = frac * rho * std::sin(th);
        run_check(rep, "sharmonicity_p" + std::to_string(k), {{"frac", frac}}, [&, x] {
            CheckOutcome out;
            out.value = sharmonicity_residual(pb, x, op_spec);
            out.oracle = 0.0;
            out.tol = 1e-3; // scale max(1, sup|u_h|) = 1 for this datum
            return out;
        });
    }
}

// ---------------------------------------------------------------------------
// analyticity suite: factorial growth of solution derivatives.
// ---------------------------------------------------------------------------
void suite_analyticity(Report& rep, const SuiteConfig& cfg) {
    const int dim = cfg.dim;
    const double rho = 0.8, r0 = 0.6;
    const FracParams params(dim, 0.5);
    QuadratureSpec spec = tight_spec(cfg, 128);
    BallProblem pb{rho, preset_field("gaussian", dim), params, spec};

    run_check(rep, "derivative_vs_fd", {{"iota", "e1"}}, [&] {
        const Point x{0.2, 0.1};
        const int m[2] = {1, 0};
        const double d = solution_derivative(pb, x, std::span<const int>(m, 2)).value;
        const double h = 1e-5;
        Point xp = x, xm = x;
        xp[0] += h;
        xm[0] -= h;
        const double fd =
            (solve_dirichlet(pb, xp).value - solve_dirichlet(pb, xm).value) / (2.0 * h);
        CheckOutcome out;
        out.value = d;
        out.oracle = fd;
        out.tol = 1e-4 * std::max(std::abs(fd), 1e-6);
        return out;
    });

    run_check(rep, "factorial_growth_fit", {{"orders", "1..4"}, {"r0", r0}}, [&] {
        std::vector<double> ys;
        for (int k = 1; k <= 4; ++k) {
            double mk = 0;
            for (int ir = 0; ir < 5; ++ir) {
                for (int it = 0; it < 4; ++it) {
                    const double r = r0 * ir / 4.0;
                    const double th = 0.5 * kPi * it + 0.2;
                    Point x(dim);
                    x[0] = r * std::cos(th);
                    x[1] = r * std::sin(th);
                    int m[2] = {k, 0};
                    mk = std::max(mk,
                                  std::abs(solution_derivative(pb, x, std::span<const int>(m, 2))
                                               .value));
                }
            }
            double fact = 1;
            for (int j = 2; j <= k; ++j) fact *= j;
            ys.push_back(std::log(mk / fact));
        }
        // Least-squares line in k; the fit residual is the check.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = 1; k <= 4; ++k) {
            sx += k;
            sy += ys[k - 1];
            sxx += k * k;
            sxy += k * ys[k - 1];
        }
        const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
        const double icept = (sy - slope * sx) / 4;
        double resid = 0;
        for (int k = 1; k <= 4; ++k)
            resid = std::max(resid, std::abs(ys[k - 1] - (slope * k + icept)));
        CheckOutcome out;
        out.value = resid;
        out.oracle = 0.0;
        out.tol = 0.2;
        out.note = "slope=" + std::to_string(slope);
        return out;
    });
}

std::vector<double> default_s_values(const std::string& suite) {
    if (suite == "leibniz") return {0.25, 0.5, 0.75};
    return {0.5};
}

std::vector<std::string> default_presets(const std::string& suite) {
    if (suite == "polarization")
        return {"constant", "affine", "gaussian", "bump(0.9)", "holder-cusp(0.7)"};
    if (suite == "gagliardo-limit") return {"gaussian", "bump(0.9)", "gaussian(0.8)"};
    return {};
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "norms",       "leibniz",        "polarization", "gagliardo-limit",
        "holder-transfer", "poisson",    "analyticity"};
    return names;
}

Report run_suite(const SuiteConfig& cfg) {
    if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end())
        throw ConfigError("run_suite: unknown suite '" + cfg.suite + "'");
    Report rep;
    rep.version = kVersion;
    rep.config = {{"suite", cfg.suite},
                  {"dim", cfg.dim},
                  {"seed", cfg.seed},
                  {"mc_samples", cfg.mc_samples},
                  {"angular_rule", cfg.angular_rule},
                  {"n_threads", cfg.n_threads}};
    const std::vector<double> s_values =
        cfg.s_values ? *cfg.s_values : default_s_values(cfg.suite);
    const std::vector<std::string> presets =
        cfg.presets ? *cfg.presets : default_presets(cfg.suite);
    rep.config["s_values"] = s_values;
    rep.config["presets"] = presets;

    const bool empty_grid = (cfg.s_values && cfg.s_values->empty()) ||
                            (cfg.presets && cfg.presets->empty() &&
                             !default_presets(cfg.suite).empty());
    if (!empty_grid) {
        if (cfg.suite == "norms") suite_norms(rep, cfg);
        if (cfg.suite == "leibniz") suite_leibniz(rep, cfg, s_values);
        if (cfg.suite == "polarization") suite_polarization(rep, cfg, presets);
        if (cfg.suite == "gagliardo-limit") suite_gagliardo_limit(rep, cfg, presets);
        if (cfg.suite == "holder-transfer") suite_holder_transfer(rep, cfg);
        if (cfg.suite == "poisson") suite_poisson(rep, cfg);
        if (cfg.suite == "analyticity") suite_analyticity(rep, cfg);
    }

    rep.total = static_cast<int>(rep.records.size());
    for (const CheckRecord& r : rep.records) (r.pass ? rep.passed : rep.failed) += 1;
    if (!cfg.out_path.empty() || !cfg.csv_path.empty()) {
        std::string csv = cfg.csv_path;
        if (csv.empty() && !cfg.out_path.empty()) {
            csv = cfg.out_path;
            const auto dot = csv.rfind('.');
            csv = (dot == std::string::npos ? csv : csv.substr(0, dot)) + ".csv";
        }
        write_report(rep, cfg.out_path, csv);
    }
    return rep;
}

json report_to_json(const Report& rep) {
    json j;
    j["version"] = rep.version;
    j["config"] = rep.config;
    j["records"] = json::array();
    for (const CheckRecord& r : rep.records) {
        j["records"].push_back({{"id", r.id},
                                {"suite", r.suite},
                                {"inputs", r.inputs},
                                {"value", r.value},
                                {"oracle", r.oracle},
                                {"err_est", r.err_est},
                                {"tol", r.tol},
                                {"pass", r.pass},
                                {"ms", r.ms},
                                {"note", r.note}});
    }
    j["summary"] = {{"total", rep.total}, {"passed", rep.passed}, {"failed", rep.failed}};
    return j;
}

void write_report(const Report& rep, const std::string& json_path, const std::string& csv_path) {
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) throw ConfigError("write_report: cannot open " + json_path);
        f << report_to_json(rep).dump(2) << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw ConfigError("write_report: cannot open " + csv_path);
        f << "id,suite,value,oracle,err_est,tol,pass,ms,note\n";
        for (const CheckRecord& r : rep.records) {
            std::string note = r.note;
            std::replace(note.begin(), note.end(), ',', ';');
            f << r.id << ',' << r.suite << ',' << r.value << ',' << r.oracle << ',' << r.err_est
              << ',' << r.tol << ',' << (r.pass ? 1 : 0) << ',' << r.ms << ',' << note << "\n";
        }
    }
}

SuiteConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("parse_config_file: cannot open " + path);
    SuiteConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r");
            const auto e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "suite") cfg.suite = val;
            else if (key == "dim") cfg.dim = std::stoi(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "mc_samples") cfg.mc_samples = std::stol(val);
            else if (key == "angular_rule") cfg.angular_rule = std::stoi(val);
            else if (key == "n_threads") cfg.n_threads = std::stoi(val);
            else if (key == "out") cfg.out_path = val;
            else if (key == "csv") cfg.csv_path = val;
            else if (key == "s") {
                std::vector<double> vals;
                std::stringstream ss(val);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!trim(tok).empty()) vals.push_back(std::stod(trim(tok)));
                cfg.s_values = vals;
            } else if (key == "presets") {
                std::vector<std::string> vals;
                std::stringstream ss(val);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!trim(tok).empty()) vals.push_back(trim(tok));
                cfg.presets = vals;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("parse_config_file: line " + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
    return cfg;
}

} // namespace fraclap
