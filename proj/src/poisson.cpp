#include "fraclap/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/jet.hpp"
#include "fraclap/rng.hpp"

namespace fraclap {

double poisson_kernel(double rho, const Point& x, const Point& y, const FracParams& params) {
    const double xn = x.norm();
    const double yn = y.norm();
    if (!(xn < rho)) throw DomainError("poisson_kernel: x must lie inside the ball");
    if (!(yn > rho)) throw DomainError("poisson_kernel: y must lie outside the ball");
    const double s = params.order();
    const double ratio = (rho * rho - xn * xn) / (yn * yn - rho * rho);
    return params.c_ns() * std::pow(ratio, s) * std::pow((x - y).norm(), -params.dim());
}

double poisson_kernel_constant(const FracParams& params) {
    const double N = params.dim();
    const double s = params.order();
    return gamma_fn(0.5 * N) * std::sin(std::numbers::pi * s) /
           std::pow(std::numbers::pi, 0.5 * N + 1.0);
}

double kernel_mass_ratio(const FracParams& params) {
    const double N = params.dim();
    const double s = params.order();
    return std::pow(4.0, s) * gamma_fn(0.5 * N + s) * gamma_fn(1.0 + s) / gamma_fn(0.5 * N);
}

double normalized_poisson_kernel(double rho, const Point& x, const Point& y,
                                 const FracParams& params) {
    return poisson_kernel(rho, x, y, params) * poisson_kernel_constant(params) / params.c_ns();
}

namespace {

/// Radial backbone of every exterior integral here:
///   int_rho^inf (r^2 - rho^2)^{-s} f(r) dr
/// with the boundary singularity removed by t = (r^2-rho^2)^{1-s} on the
/// near shell, a direct middle zone, and an algebraic or vanishing tail.
struct ExteriorPlan {
    double rho;
    double s;
    double outer;          // middle/tail boundary
    bool tail_vanishes;    // integrand is identically zero beyond `outer`
    std::vector<double> breakpoints;
    /// Near-boundary evaluation points make the angular kernel average peak
    /// at the shell start over the scale rho - |x|; panels are pre-split
    /// there.
    std::vector<double> shell_breakpoints;
};

/// The callback receives r and q = r^2 - rho^2 computed without
/// cancellation, so near-boundary kernel factors stay at full precision.
RadialIntegralResult exterior_radial(const std::function<double(double, double)>& f,
                                     const ExteriorPlan& plan, const QuadratureSpec& spec) {
    const double rho = plan.rho;
    const double s = plan.s;
    const double rel = 0.5 * spec.rel_tol;
    const double abs = 0.25 * spec.abs_tol;
    RadialIntegralResult out;

    const double rmid = std::min(1.5 * rho, rho + 1.0);
    const double T = std::pow(rmid * rmid - rho * rho, 1.0 - s);
    auto shell = [&](double t) {
        const double q = std::pow(t, 1.0 / (1.0 - s)); // r^2 - rho^2, exact
        const double r = std::sqrt(rho * rho + q);
        return f(r, q) / (2.0 * r * (1.0 - s));
    };
    std::vector<double> tbreaks;
    for (double rb : plan.shell_breakpoints)
        if (rb > rho && rb < rmid)
            tbreaks.push_back(std::pow((rb - rho) * (rb + rho), 1.0 - s));
    IntegralResult z1 =
        integrate_adaptive(shell, 0.0, T, rel, abs, spec.max_subdivisions, tbreaks, "shell");
    out.zones.inner = z1.value;
    out.zones.inner_err = z1.err;

    auto direct = [&](double r) {
        const double q = (r - rho) * (r + rho);
        return std::pow(q, -s) * f(r, q);
    };
    const double outer = std::max(plan.outer, rmid * 1.01);
    IntegralResult z2 = integrate_adaptive(direct, rmid, outer, rel, abs, spec.max_subdivisions,
                                           plan.breakpoints, "middle");
    out.zones.middle = z2.value;
    out.zones.middle_err = z2.err;

    if (!plan.tail_vanishes) {
        auto sub = [&](double t) { return direct(outer / t) * outer / (t * t); };
        IntegralResult z3 =
            integrate_adaptive(sub, 0.0, 1.0, rel, abs, spec.max_subdivisions, {}, "tail");
        out.zones.tail = z3.value;
        out.zones.tail_err = z3.err;
    }
    out.value = out.zones.inner + out.zones.middle + out.zones.tail;
    out.err = out.zones.inner_err + out.zones.middle_err + out.zones.tail_err;
    return out;
}

/// Closed-form angular integral of |x - r w|^{-N} over the unit sphere
/// directions w, for |x| = a < r; r^2 - a^2 is supplied cancellation-free.
double sphere_kernel_average(int N, double r, double r2_minus_a2) {
    if (N == 2) return 2.0 * std::numbers::pi / r2_minus_a2;
    return 4.0 * std::numbers::pi / (r * r2_minus_a2); // N == 3
}

ExteriorPlan plan_for(const BallProblem& pb, double kink_spread, double xnorm) {
    ExteriorPlan plan;
    plan.rho = pb.rho;
    plan.s = pb.params.order();
    const ScalarField& h = pb.exterior;
    if (h.decay == Decay::compact_support && std::isfinite(h.support_radius)) {
        plan.outer = std::max(h.support_radius + kink_spread, pb.rho * 1.6);
        plan.tail_vanishes = true;
    } else {
        plan.outer = std::max(pb.spec.outer_cut, pb.rho * 2.0);
        plan.tail_vanishes = false;
    }
    for (double k : h.radial_kinks) {
        plan.breakpoints.push_back(k - kink_spread);
        plan.breakpoints.push_back(k + kink_spread);
        plan.breakpoints.push_back(k);
    }
    const double w = std::max(pb.rho - xnorm, 1e-13);
    for (double k : {1.0, 4.0, 16.0, 64.0}) plan.shell_breakpoints.push_back(pb.rho + k * w);
    return plan;
}

/// Generic x-dependent exterior integral of kern(y) h(y) over B_rho^c with
/// the (r^2-rho^2)^{-s} factor stripped into the backbone.
RadialIntegralResult exterior_integral_xy(const BallProblem& pb, const Point& x,
                                          const std::function<double(const Point&)>& smooth_part,
                                          double* angular_err) {
    const int N = pb.params.dim();
    const SphereRule& full = sphere_rule(N, pb.spec.angular_rule);
    const SphereRule& half = sphere_rule(N, std::max(8, pb.spec.angular_rule / 2));
    auto avg = [&](double r, const SphereRule& rule) {
        double sum = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j)
            sum += rule.w[j] * smooth_part(r * rule.dir[j]);
        return sum * std::pow(r, N - 1);
    };
    ExteriorPlan plan = plan_for(pb, x.norm(), x.norm());
    auto f = [&](double r, double) { return avg(r, full); };
    RadialIntegralResult res = exterior_radial(f, plan, pb.spec);
    if (angular_err) {
        // Rule-halving probe at two representative radii.
        double dev = 0;
        for (double r : {pb.rho * 1.02, pb.rho * 1.5}) {
            const double a1 = avg(r, full);
            const double a0 = avg(r, half);
            dev = std::max(dev, std::abs(a1 - a0) / std::max(1e-300, std::abs(a1)));
        }
        *angular_err = dev * std::abs(res.value);
    }
    return res;
}

} // namespace

IntegralResult kernel_normalization(double rho, const Point& x, const FracParams& params,
                                    const QuadratureSpec& spec) {
    if (!(x.norm() < rho)) throw DomainError("kernel_normalization: x must lie inside the ball");
    ScalarField one;
    one.eval = [](const Point&) { return 1.0; };
    one.decay = Decay::bounded;
    one.bound = 1.0;
    one.radial = true;
    BallProblem pb{rho, one, params, spec};

    const double ck = poisson_kernel_constant(params);
    const double gap = std::pow(rho * rho - x.norm2(), params.order());
    double ang_err = 0;
    auto smooth = [&](const Point& y) {
        return ck * gap * std::pow((x - y).norm(), -params.dim());
    };
    RadialIntegralResult res = exterior_integral_xy(pb, x, smooth, &ang_err);
    return {res.value, res.err + ang_err};
}

OperatorResult solve_dirichlet(const BallProblem& pb, const Point& x) {
    const int N = pb.params.dim();
    const double s = pb.params.order();
    const double rho = pb.rho;
    const double a = x.norm();
    if (!(a < rho)) throw DomainError("solve_dirichlet: x must lie inside the ball");

    const double ck = poisson_kernel_constant(pb.params);
    const double gap = std::pow((rho - a) * (rho + a), s);
    const ScalarField& h = pb.exterior;

    if (h.radial && (N == 2 || N == 3)) {
        // The angular integral of the kernel has a closed form, so only a
        // 1-D radial quadrature remains.
        Point e1 = Point::unit(N, 0);
        ExteriorPlan plan = plan_for(pb, 0.0, a);
        const double eps = (rho - a) * (rho + a); // rho^2 - a^2, exact
        auto f = [&](double r, double q) {
            return ck * gap * h(r * e1) * sphere_kernel_average(N, r, q + eps) *
                   std::pow(r, N - 1);
        };
        RadialIntegralResult res = exterior_radial(f, plan, pb.spec);
        return {res.value, res.err, res.zones};
    }

    double ang_err = 0;
    auto smooth = [&](const Point& y) {
        return ck * gap * h(y) * std::pow((x - y).norm(), -N);
    };
    RadialIntegralResult res = exterior_integral_xy(pb, x, smooth, &ang_err);
    return {res.value, res.err + ang_err, res.zones};
}

double kernel_derivative(double rho, const Point& x, const Point& y, std::span<const int> iota,
                         const FracParams& params) {
    int order = 0;
    for (int k : iota) order += k;
    if (order > 6) throw DomainError("kernel_derivative: |iota| must be <= 6");
    const double xn = x.norm();
    const double yn = y.norm();
    if (!(xn < rho)) throw DomainError("kernel_derivative: x must lie inside the ball");
    if (!(yn > rho)) throw DomainError("kernel_derivative: y must lie outside the ball");
    if (order == 0) return poisson_kernel(rho, x, y, params);

    const double s = params.order();
    const double yfac = params.c_ns() * std::pow(yn * yn - rho * rho, -s);
    const Jet P = boundary_gap_jet(rho, x, order).pow(s) *
                  squared_distance_jet(x, y, order).pow(-0.5 * params.dim());
    return yfac * P.derivative(iota);
}

OperatorResult solution_derivative(const BallProblem& pb, const Point& x,
                                   std::span<const int> iota) {
    int order = 0;
    for (int k : iota) order += k;
    if (order > 6) throw DomainError("solution_derivative: |iota| must be <= 6");
    if (order == 0) return solve_dirichlet(pb, x);
    const int N = pb.params.dim();
    const double a = x.norm();
    if (!(a < pb.rho)) throw DomainError("solution_derivative: x must lie inside the ball");

    const double ck = poisson_kernel_constant(pb.params);
    const Jet gap_jet = boundary_gap_jet(pb.rho, x, order).pow(pb.params.order());
    const ScalarField& h = pb.exterior;

    double ang_err = 0;
    auto smooth = [&](const Point& y) {
        const Jet P = gap_jet * squared_distance_jet(x, y, order).pow(-0.5 * N);
        return ck * h(y) * P.derivative(iota);
    };
    RadialIntegralResult res = exterior_integral_xy(pb, x, smooth, &ang_err);
    return {res.value, res.err + ang_err, res.zones};
}

Point wos_sample(double rho, const Point& x, const FracParams& params, std::mt19937_64& rng) {
    const int N = params.dim();
    const double s = params.order();
    const double a = x.norm();
    if (!(a < rho)) throw DomainError("wos_sample: x must lie inside the ball");

    auto center_draw = [&]() {
        const double w = beta_sample(s, 1.0 - s, rng); // rho^2/|y|^2 law at the center
        const double r = rho / std::sqrt(std::max(w, 1e-300));
        Point d = sample_unit_sphere(N, rng);
        d *= r;
        return d;
    };
    if (a < 1e-14) return center_draw();

    const double envelope = std::pow((rho * rho - a * a) / (rho * rho), s) *
                            std::pow(rho / (rho - a), static_cast<double>(N));
    if (1.0 / envelope < 1e-4)
        throw SamplerFailure("wos_sample: rejection acceptance below 1e-4 this close to the "
                             "boundary");
    for (long attempt = 0; attempt < 2000000; ++attempt) {
        const Point y = center_draw();
        const double yn = y.norm();
        // P(x,y) / (envelope * P(0,y)) in closed form.
        const double accept = std::pow(yn * (rho - a) / (rho * (x - y).norm()),
                                       static_cast<double>(N));
        if (uniform01(rng) < accept) return y;
    }
    throw SamplerFailure("wos_sample: rejection loop exhausted");
}

WosResult wos_solve(const BallProblem& pb, const Point& x, long n_samples, std::uint64_t seed) {
    if (!(x.norm() < pb.rho)) throw DomainError("wos_solve: x must lie inside the ball");
    constexpr long kBatch = 8192;
    const long n_batches = (n_samples + kBatch - 1) / kBatch;
    double sum = 0, sumsq = 0;
    long n = 0;
    for (long b = 0; b < n_batches; ++b) {
        std::mt19937_64 g = make_stream(seed, static_cast<std::uint64_t>(b));
        const long m = std::min(kBatch, n_samples - b * kBatch);
        double bs = 0, bss = 0;
        for (long i = 0; i < m; ++i) {
            const double v = pb.exterior(wos_sample(pb.rho, x, pb.params, g));
            bs += v;
            bss += v * v;
        }
        sum += bs;
        sumsq += bss;
        n += m;
    }
    WosResult out;
    out.samples = n;
    out.mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * out.mean * out.mean) / std::max<long>(n - 1, 1));
    out.stderr_ = std::sqrt(var / n);
    return out;
}

namespace {

struct RadialSolveCache {
    std::mutex mu;
    std::map<double, double> values;
};

} // namespace

ScalarField poisson_solution_field(const BallProblem& pb) {
    auto problem = std::make_shared<BallProblem>(pb);
    auto cache = std::make_shared<RadialSolveCache>();
    const bool radial = pb.exterior.radial;
    const double rho = pb.rho;

    ScalarField out;
    out.eval = [problem, cache, radial, rho](const Point& z) {
        const double zn = z.norm();
        if (zn >= rho) return problem->exterior(z);
        if (radial) {
            {
                std::lock_guard<std::mutex> lock(cache->mu);
                auto it = cache->values.find(zn);
                if (it != cache->values.end()) return it->second;
            }
            const double v = solve_dirichlet(*problem, zn * Point::unit(problem->params.dim(), 0)).value;
            std::lock_guard<std::mutex> lock(cache->mu);
            cache->values[zn] = v;
            return v;
        }
        return solve_dirichlet(*problem, z).value;
    };
    out.gradient = [problem, rho](const Point& z) {
        const int N = problem->params.dim();
        Point g(N);
        if (z.norm() >= rho) {
            if (problem->exterior.gradient) return problem->exterior.gradient(z);
            throw DomainError("poisson_solution_field: exterior gradient unavailable");
        }
        for (int i = 0; i < N; ++i) {
            int m[kMaxDim] = {0};
            m[i] = 1;
            g[i] = solution_derivative(*problem, z, std::span<const int>(m, static_cast<size_t>(N)))
                       .value;
        }
        return g;
    };
    out.laplacian = [problem, rho](const Point& z) {
        const int N = problem->params.dim();
        if (z.norm() >= rho) {
            if (problem->exterior.laplacian) return problem->exterior.laplacian(z);
            throw DomainError("poisson_solution_field: exterior laplacian unavailable");
        }
        double lap = 0;
        for (int i = 0; i < N; ++i) {
            int m[kMaxDim] = {0};
            m[i] = 2;
            lap += solution_derivative(*problem, z, std::span<const int>(m, static_cast<size_t>(N)))
                       .value;
        }
        return lap;
    };
    out.smoothness = Smoothness::analytic;
    out.decay = pb.exterior.decay;
    out.bound = pb.exterior.bound;
    out.tail_envelope = pb.exterior.tail_envelope;
    if (pb.exterior.decay == Decay::compact_support)
        out.support_radius = std::max(pb.exterior.support_radius, rho);
    out.radial = pb.exterior.radial;
    out.radial_kinks = pb.exterior.radial_kinks;
    out.radial_kinks.push_back(rho);
    out.name = "u_h(" + pb.exterior.name + ")";
    return out;
}

double sharmonicity_residual(const BallProblem& pb, const Point& x,
                             const QuadratureSpec& op_spec) {
    if (!(x.norm() <= 0.8 * pb.rho))
        throw DomainError("sharmonicity_residual: keep |x| <= 0.8 rho for C2 control");
    const ScalarField u = poisson_solution_field(pb);
    QuadratureSpec sp = op_spec;
    // The materialized solution carries quadrature noise of its own; a
    // larger Taylor ball keeps it out of the second differences.
    sp.taylor_radius = std::max(op_spec.taylor_radius, 3e-3);
    return frac_laplacian(u, x, pb.params, sp).value;
}

} // namespace fraclap
