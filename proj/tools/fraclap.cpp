// fraclap: evaluate nonlocal operators, solve the ball Dirichlet problem,
// compute weighted seminorms, and run the verification suites.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraclap/errors.hpp"
#include "fraclap/norms.hpp"
#include "fraclap/ops.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/presets.hpp"
#include "fraclap/suite.hpp"

using namespace fraclap;

namespace {

Point parse_point(const std::string& text, int dim) {
    std::vector<double> coords;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
    if (static_cast<int>(coords.size()) != dim)
        throw ConfigError("point '" + text + "' does not have " + std::to_string(dim) +
                          " coordinates");
    Point p(dim);
    for (int i = 0; i < dim; ++i) p[i] = coords[i];
    return p;
}

int run_eval(const std::string& preset, int dim, double s, const std::string& point,
             double rel_tol) {
    const ScalarField u = preset_field(preset, dim);
    const FracParams params(dim, s);
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = 1e-12;
    const Point x = parse_point(point, dim);
    const OperatorResult r = frac_laplacian(u, x, params, spec);
    std::printf("(-Delta)^%g %s(%s) = %.12g +- %.3g\n", s, preset.c_str(), point.c_str(), r.value,
                r.err_est);
    return 0;
}

int run_solve(double rho, const std::string& preset, int dim, double s, const std::string& point,
              long mc, std::uint64_t seed) {
    QuadratureSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-12;
    spec.angular_rule = 512;
    BallProblem pb{rho, preset_field(preset, dim), FracParams(dim, s), spec};
    const Point x = parse_point(point, dim);
    const OperatorResult r = solve_dirichlet(pb, x);
    std::printf("u_h(%s) = %.10g +- %.3g   [rho=%g, s=%g, h=%s]\n", point.c_str(), r.value,
                r.err_est, rho, s, preset.c_str());
    if (mc > 0) {
        const WosResult w = wos_solve(pb, x, mc, seed);
        std::printf("wos(%ld samples) = %.10g +- %.3g   |solve - wos| = %.3g\n", mc, w.mean,
                    w.stderr_, std::abs(r.value - w.mean));
    }
    return 0;
}

int run_seminorm(const std::string& preset, int dim, double domain, double s, double p, long mc,
                 std::uint64_t seed) {
    QuadratureSpec spec;
    spec.mc_samples = mc;
    spec.mc_rel_tol = 0.02;
    spec.mc_abs_tol = 1e-6;
    spec.rng_seed = seed;
    const SeminormResult r = gagliardo_seminorm(preset_field(preset, dim), domain, s, p, dim, spec);
    std::printf("[%s]_{W^{%g,%g}(B_%g)} = %.8g +- %.3g\n", preset.c_str(), s, p, domain, r.value,
                r.stderr_);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclap: fractional-Laplacian toolkit and verification harness"};
    app.require_subcommand(1);

    std::string preset = "gaussian", point = "0,0", config_path, out_path, suite_name,
                s_list, preset_list;
    int dim = 2;
    double s = 0.5, rho = 1.0, domain = 1.0, p_exp = 2.0, rel_tol = 1e-8;
    long mc = 0;
    std::uint64_t seed = 42;

    CLI::App* eval = app.add_subcommand("eval", "pointwise fractional Laplacian of a preset");
    eval->add_option("--preset", preset, "field preset")->capture_default_str();
    eval->add_option("--dim", dim)->capture_default_str();
    eval->add_option("--s", s, "fractional order in (0,1)")->capture_default_str();
    eval->add_option("--point", point, "comma-separated coordinates")->capture_default_str();
    eval->add_option("--rel-tol", rel_tol)->capture_default_str();

    CLI::App* solve = app.add_subcommand("solve", "Poisson-kernel Dirichlet solve in a ball");
    solve->add_option("--rho", rho, "ball radius")->capture_default_str();
    solve->add_option("--preset-exterior", preset, "exterior datum preset")->capture_default_str();
    solve->add_option("--dim", dim)->capture_default_str();
    solve->add_option("--s", s)->capture_default_str();
    solve->add_option("--point", point)->capture_default_str();
    solve->add_option("--mc", mc, "cross-check with this many walk-on-spheres samples");
    solve->add_option("--seed", seed)->capture_default_str();

    CLI::App* semi = app.add_subcommand("seminorm", "Gagliardo seminorm over a ball");
    semi->add_option("--preset", preset)->capture_default_str();
    semi->add_option("--dim", dim)->capture_default_str();
    semi->add_option("--domain", domain, "ball radius")->capture_default_str();
    semi->add_option("--s", s)->capture_default_str();
    semi->add_option("--p", p_exp)->capture_default_str();
    semi->add_option("--mc", mc, "Monte-Carlo samples (default 1e6)");
    semi->add_option("--seed", seed)->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite_name, "one of: norms leibniz polarization gagliardo-limit "
                                            "holder-transfer poisson analyticity");
    verify->add_option("--config", config_path, "key=value config file");
    verify->add_option("--out", out_path, "JSON report path (CSV written alongside)");
    verify->add_option("--seed", seed)->capture_default_str();
    verify->add_option("--dim", dim)->capture_default_str();
    verify->add_option("--s", s_list, "comma-separated s grid override");
    verify->add_option("--presets", preset_list, "comma-separated preset override");
    verify->add_option("--mc", mc, "Monte-Carlo samples override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(preset, dim, s, point, rel_tol);
        if (solve->parsed()) return run_solve(rho, preset, dim, s, point, mc, seed);
        if (semi->parsed())
            return run_seminorm(preset, dim, domain, s, p_exp, mc > 0 ? mc : 1000000, seed);
        if (verify->parsed()) {
            SuiteConfig cfg;
            if (!config_path.empty()) cfg = parse_config_file(config_path);
            if (!suite_name.empty()) cfg.suite = suite_name;
            if (verify->count("--seed")) cfg.seed = seed;
            if (verify->count("--dim")) cfg.dim = dim;
            if (verify->count("--mc")) cfg.mc_samples = mc;
            if (!out_path.empty()) cfg.out_path = out_path;
            if (verify->count("--s")) {
                std::vector<double> vals;
                std::stringstream ss(s_list);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) vals.push_back(std::stod(tok));
                cfg.s_values = vals;
            }
            if (verify->count("--presets")) {
                std::vector<std::string> vals;
                std::stringstream ss(preset_list);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) vals.push_back(tok);
                cfg.presets = vals;
            }
            if (cfg.suite.empty())
                throw ConfigError("verify: no suite given (argument or config file)");
            Report rep = run_suite(cfg);
            std::printf("suite %s: %d checks, %d passed, %d failed\n", cfg.suite.c_str(),
                        rep.total, rep.passed, rep.failed);
            for (const CheckRecord& r : rep.records)
                if (!r.pass)
                    std::printf("  FAIL %s: value=%.6g oracle=%.6g tol=%.3g  %s\n", r.id.c_str(),
                                r.value, r.oracle, r.tol, r.note.c_str());
            return rep.failed == 0 ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnknownPreset& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
