#include "fraclap/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"

namespace fraclap {

namespace {


constexpr double kFdStep = 2e-4;       // finite-difference fallback step

Point fd_gradient(const ScalarField& u, const Point& x) {
    Point g(x.dim());
    for (int i = 0; i < x.dim(); ++i) {
        Point e = Point::unit(x.dim(), i);
        g[i] = (u(axpy(x, kFdStep, e)) - u(axpy(x, -kFdStep, e))) / (2.0 * kFdStep);
    }
    return g;
}

double fd_laplacian(const ScalarField& u, const Point& x) {
    const double ux = u(x);
    double lap = 0;
    for (int i = 0; i < x.dim(); ++i) {
        Point e = Point::unit(x.dim(), i);
        lap += (u(axpy(x, kFdStep, e)) - 2.0 * ux + u(axpy(x, -kFdStep, e))) /
               (kFdStep * kFdStep);
    }
    return lap;
}

Point grad_of(const ScalarField& u, const Point& x) {
    return u.gradient ? u.gradient(x) : fd_gradient(u, x);
}

double lap_of(const ScalarField& u, const Point& x) {
    return u.laplacian ? u.laplacian(x) : fd_laplacian(u, x);
}

/// Radial panel edges induced by kinks of the field seen from x: a kink at
/// radius k shows up, over directions, at distances spanning [|k-|x||, k+|x|].
void add_kink_band(std::vector<double>& bp, double kink, double xnorm) {
    bp.push_back(std::abs(kink - xnorm));
    bp.push_back(kink + xnorm);
}

std::vector<double> kink_breakpoints(const ScalarField& u, double xnorm) {
    std::vector<double> bp;
    for (double k : u.radial_kinks) add_kink_band(bp, k, xnorm);
    if (u.decay == Decay::compact_support && std::isfinite(u.support_radius))
        add_kink_band(bp, u.support_radius, xnorm);
    return bp;
}

/// sup |u| on |z| >= r, from the declared decay data; NaN when unavailable.
double envelope_at(const ScalarField& u, double r) {
    if (u.decay == Decay::compact_support && r >= u.support_radius) return 0.0;
    if (u.tail_envelope) return u.tail_envelope(r);
    if (u.decay == Decay::bounded && std::isfinite(u.bound)) return u.bound;
    return std::numeric_limits<double>::quiet_NaN();
}

struct TailPlan {
    double outer = 0;
    TailRule rule = TailRule::algebraic;
    double value = 0;
    double err = 0;
};

/// Plans the tail of a kernel integral whose integrand beyond the reach of
/// the varying part is const_part * r^{-N-2s} plus terms bounded by
/// env_fn(R). Grows the outer radius until the envelope error meets the
/// tolerance or a work cap.
TailPlan plan_tail(double const_part, const std::function<double(double)>& env_fn, double base_outer,
                   double reach, int dim, double s, const QuadratureSpec& spec) {
    const double area = unit_sphere_area(dim);
    TailPlan plan;
    plan.rule = TailRule::closed_form;
    double R = std::max(base_outer, reach * 1.05 + 0.125);
    double err = 0;
    for (int i = 0; i < 48; ++i) {
        err = env_fn(R) * area * std::pow(R, -2.0 * s) / (2.0 * s);
        const double target =
            std::max(0.25 * spec.abs_tol,
                     0.25 * spec.rel_tol * std::abs(const_part) * area * std::pow(R, -2.0 * s) /
                         (2.0 * s));
        if (err <= std::max(target, 1e-300) || R > 1e9) break;
        R *= 2.0;
    }
    plan.outer = R;
    plan.value = const_part * area * std::pow(R, -2.0 * s) / (2.0 * s);
    plan.err = err;
    return plan;
}

} // namespace

OperatorResult frac_laplacian(const ScalarField& u, const Point& x, const FracParams& params,
                              const QuadratureSpec& spec) {
    if (!u.at_least_c2())
        throw DomainError("frac_laplacian: field must carry at least a C2 smoothness tag");
    const int N = params.dim();
    const double s = params.order();
    const double halfC = 0.5 * params.c_ns();
    const double area = unit_sphere_area(N);
    const double xnorm = x.norm();
    const double ux = u(x);

    // Tail: beyond the reach of the varying part the second difference is
    // 2 u(x) up to the decay envelope of u(x +- y).
    TailPlan tail;
    const bool compact = u.decay == Decay::compact_support && std::isfinite(u.support_radius);
    const double reach = compact ? xnorm + u.support_radius : xnorm;
    if (compact) {
        tail = plan_tail(halfC * 2.0 * ux, [](double) { return 0.0; }, spec.outer_cut, reach, N, s,
                         spec);
    } else if (u.tail_envelope || (u.decay == Decay::bounded && std::isfinite(u.bound))) {
        auto env = [&u, halfC, xnorm](double R) {
            return halfC * 2.0 * envelope_at(u, std::max(R - xnorm, 0.0));
        };
        tail = plan_tail(halfC * 2.0 * ux, env, spec.outer_cut, reach, N, s, spec);
    } else if (s <= 0.5) {
        throw DomainError("frac_laplacian: weighted-L1 field without a decay envelope risks an "
                          "uncontrolled tail for s <= 1/2");
    } else {
        tail.rule = TailRule::algebraic;
        tail.outer = spec.outer_cut;
    }

    // Inner ball from the Taylor expansion of the second difference.
    const double a = std::min(spec.taylor_radius, 0.5 * spec.inner_cut);
    const double lap = lap_of(u, x);
    const double inner_weight = std::pow(a, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    const double taylor_value = -halfC * lap * (area / N) * inner_weight;

    const SphereRule& rule = sphere_rule(N, spec.angular_rule);
    auto second_diff_avg = [&](double r) {
        double sum = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j)
            sum += rule.w[j] * (2.0 * ux - u(axpy(x, r, rule.dir[j])) - u(axpy(x, -r, rule.dir[j])));
        return sum;
    };
    const double measured_m2 = second_diff_avg(a) / (a * a);
    const double deviation = std::abs(measured_m2 + lap * area / N);
    const double taylor_err = 2.0 * halfC * deviation * inner_weight;

    QuadratureSpec spec2 = spec;
    spec2.outer_cut = tail.outer;
    RadialZones zones;
    zones.inner_skip = a;
    zones.taylor_value = taylor_value;
    zones.taylor_err = taylor_err;
    zones.tail = tail.rule;
    zones.tail_value = tail.value;
    zones.tail_err = tail.err;
    zones.breakpoints = kink_breakpoints(u, xnorm);

    const double kexp = -(N + 2.0 * s);
    auto F = [&](double r, const Point& w) {
        return halfC * (2.0 * ux - u(axpy(x, r, w)) - u(axpy(x, -r, w))) * std::pow(r, kexp);
    };
    RadialIntegralResult res = singular_radial_integral(F, N, spec2, zones);
    return {res.value, res.err, res.zones};
}

OperatorResult frac_laplacian_pv(const ScalarField& u, const Point& x, const FracParams& params,
                                 const QuadratureSpec& spec, double trunc_radius) {
    if (!u.at_least_c2())
        throw DomainError("frac_laplacian_pv: field must carry at least a C2 smoothness tag");
    if (!(trunc_radius > 0 && trunc_radius < spec.outer_cut))
        throw DomainError("frac_laplacian_pv: truncation radius out of range");
    const int N = params.dim();
    const double s = params.order();
    const double C = params.c_ns();
    const double area = unit_sphere_area(N);
    const double xnorm = x.norm();
    const double ux = u(x);

    TailPlan tail;
    const bool compact = u.decay == Decay::compact_support && std::isfinite(u.support_radius);
    const double reach = compact ? xnorm + u.support_radius : xnorm;
    if (compact) {
        tail = plan_tail(C * ux, [](double) { return 0.0; }, spec.outer_cut, reach, N, s, spec);
    } else if (u.tail_envelope || (u.decay == Decay::bounded && std::isfinite(u.bound))) {
        auto env = [&u, C, xnorm](double R) {
            return C * envelope_at(u, std::max(R - xnorm, 0.0));
        };
        tail = plan_tail(C * ux, env, spec.outer_cut, reach, N, s, spec);
    } else {
        tail.rule = TailRule::algebraic;
        tail.outer = spec.outer_cut;
    }

    // The omitted symmetric annulus is charged to the error estimate via
    // the same Taylor data the second-difference form uses as a value.
    const double lap = lap_of(u, x);
    const double wgt = std::pow(trunc_radius, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    const double omitted = 0.5 * C * (std::abs(lap) * (area / N)) * wgt;

    QuadratureSpec spec2 = spec;
    spec2.inner_cut = trunc_radius;
    spec2.outer_cut = tail.outer;
    RadialZones zones;
    zones.inner_skip = trunc_radius;
    zones.taylor_value = 0;
    zones.taylor_err = 1.5 * omitted;
    zones.tail = tail.rule;
    zones.tail_value = tail.value;
    zones.tail_err = tail.err;
    zones.breakpoints = kink_breakpoints(u, xnorm);

    const double kexp = -(N + 2.0 * s);
    auto F = [&](double r, const Point& w) {
        return C * (ux - u(axpy(x, r, w))) * std::pow(r, kexp);
    };
    RadialIntegralResult res = singular_radial_integral(F, N, spec2, zones);
    return {res.value, res.err, res.zones};
}

double gaussian_fourier_oracle(double s, double xnorm, int dim) {
    if (!(s > 0 && s < 1)) throw DomainError("gaussian_fourier_oracle: s must lie in (0,1)");
    if (dim < 2) throw DomainError("gaussian_fourier_oracle: dim must be >= 2");
    const double pi = std::numbers::pi;
    if (xnorm == 0.0) {
        // closed form: area * (2pi)^{2s} Gamma(s + N/2) / (2 pi^{s + N/2})
        return unit_sphere_area(dim) * std::pow(2.0 * pi, 2.0 * s) *
               gamma_fn(s + 0.5 * dim) / (2.0 * std::pow(pi, s + 0.5 * dim));
    }
    std::function<double(double)> f;
    if (dim == 2) {
        f = [=](double r) {
            return std::pow(2.0 * pi, 2.0 * s) * 2.0 * pi * std::pow(r, 2.0 * s + 1.0) *
                   std::exp(-pi * r * r) * std::cyl_bessel_j(0.0, 2.0 * pi * xnorm * r);
        };
    } else if (dim == 3) {
        f = [=](double r) {
            const double z = 2.0 * pi * xnorm * r;
            const double sinc = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
            return std::pow(2.0 * pi, 2.0 * s) * 4.0 * pi * std::pow(r, 2.0 * s + 2.0) *
                   std::exp(-pi * r * r) * sinc;
        };
    } else {
        throw DomainError("gaussian_fourier_oracle: off-center values implemented for N = 2, 3");
    }
    IntegralResult res = integrate_adaptive(f, 0.0, 8.0, 1e-12, 1e-14, 4000, {}, "fourier");
    return res.value;
}

OperatorResult carre_du_champ(const ScalarField& f, const ScalarField& g, const Point& x,
                              const FracParams& params, const QuadratureSpec& spec) {
    const int N = params.dim();
    const double s = params.order();
    const double C = params.c_ns();
    const double area = unit_sphere_area(N);
    const double xnorm = x.norm();
    if (f.holder_exponent() + g.holder_exponent() <= 2.0 * s)
        throw DomainError("carre_du_champ: combined increment exponent must exceed 2s for an "
                          "integrable diagonal");
    const double fx = f(x);
    const double gx = g(x);

    const bool f_compact = f.decay == Decay::compact_support && std::isfinite(f.support_radius);
    const bool g_compact = g.decay == Decay::compact_support && std::isfinite(g.support_radius);
    double reach = xnorm;
    if (f_compact && g_compact)
        reach = xnorm + std::max(f.support_radius, g.support_radius);

    TailPlan tail;
    auto env_pair = [&](double R) {
        const double d = std::max(R - xnorm, 0.0);
        const double ef = envelope_at(f, d);
        const double eg = envelope_at(g, d);
        if (std::isnan(ef) || std::isnan(eg)) return std::numeric_limits<double>::quiet_NaN();
        return C * (std::abs(fx) * eg + std::abs(gx) * ef + ef * eg);
    };
    if (!std::isnan(env_pair(spec.outer_cut))) {
        tail = plan_tail(C * fx * gx, env_pair, spec.outer_cut, reach, N, s, spec);
    } else {
        tail.rule = TailRule::algebraic;
        tail.outer = spec.outer_cut;
    }

    // Taylor data needs first derivatives on both sides.
    double a = 0;
    double taylor_value = 0, taylor_err = 0;
    if (f.gradient && g.gradient && f.at_least_c2() && g.at_least_c2()) {
        a = std::min(spec.taylor_radius, 0.5 * spec.inner_cut);
        const double gdot = grad_of(f, x).dot(grad_of(g, x));
        const double wgt = std::pow(a, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
        taylor_value = C * gdot * (area / N) * wgt;
        const SphereRule& rule = sphere_rule(N, spec.angular_rule);
        double sum = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j) {
            const Point y = axpy(x, a, rule.dir[j]);
            sum += rule.w[j] * (fx - f(y)) * (gx - g(y));
        }
        const double deviation = std::abs(sum / (a * a) - gdot * area / N);
        taylor_err = 2.0 * C * deviation * wgt;
    }

    QuadratureSpec spec2 = spec;
    spec2.outer_cut = tail.outer;
    RadialZones zones;
    zones.inner_skip = a;
    zones.taylor_value = taylor_value;
    zones.taylor_err = taylor_err;
    zones.tail = tail.rule;
    zones.tail_value = tail.value;
    zones.tail_err = tail.err;
    zones.breakpoints = kink_breakpoints(f, xnorm);
    for (double b : kink_breakpoints(g, xnorm)) zones.breakpoints.push_back(b);

    const double kexp = -(N + 2.0 * s);
    auto F = [&](double r, const Point& w) {
        const Point y = axpy(x, r, w);
        return C * (fx - f(y)) * (gx - g(y)) * std::pow(r, kexp);
    };
    RadialIntegralResult res = singular_radial_integral(F, N, spec2, zones);
    return {res.value, res.err, res.zones};
}

LeibnizResult leibniz_residual(const ScalarField& f, const ScalarField& g, const Point& x,
                               const FracParams& params, const QuadratureSpec& spec) {
    const ScalarField fg = field_product(f, g);
    const OperatorResult lfg = frac_laplacian(fg, x, params, spec);
    const OperatorResult lg = frac_laplacian(g, x, params, spec);
    const OperatorResult lf = frac_laplacian(f, x, params, spec);
    const OperatorResult is = carre_du_champ(f, g, x, params, spec);
    const double fx = f(x);
    const double gx = g(x);

    LeibnizResult out;
    out.residual = lfg.value - fx * lg.value - gx * lf.value + is.value;
    out.err_est = lfg.err_est + std::abs(fx) * lg.err_est + std::abs(gx) * lf.err_est + is.err_est;
    out.scale = std::max({std::abs(lfg.value), std::abs(fx * lg.value), std::abs(gx * lf.value),
                          std::abs(is.value)});
    return out;
}

SourceFieldResult source_field(const ScalarField& u, const CutoffField& eta, const Point& x,
                               const FracParams& params, const QuadratureSpec& spec) {
    const int N = params.dim();
    const double s = params.order();
    const double C = params.c_ns();
    const double area = unit_sphere_area(N);
    const double xnorm = x.norm();

    const ScalarField eta_f = cutoff_as_field(eta);
    const ScalarField eta2 = field_product(eta_f, eta_f);
    const double e2x = eta2(x);
    const double ux = u(x);

    // Direct form. Beyond the cutoff support the integrand is
    // eta^2(x) u(y) / |x-y|^{N+2s}; it is integrated numerically through
    // the substitution tail (u decays or is bounded, the kernel does the
    // rest), or vanishes exactly when x is outside the support.
    SourceFieldResult out;
    {
        double a = std::min(spec.taylor_radius, 0.5 * spec.inner_cut);
        const Point grad_e2 = eta2.gradient(x);
        const double lap_e2 = eta2.laplacian(x);
        const Point grad_u = grad_of(u, x);
        const double wgt = std::pow(a, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
        const double m2 = -(ux * 0.5 * lap_e2 + grad_u.dot(grad_e2));
        const double taylor_value = C * m2 * (area / N) * wgt;
        const SphereRule& rule = sphere_rule(N, spec.angular_rule);
        double sum = 0;
        for (size_t j = 0; j < rule.dir.size(); ++j) {
            const Point y = axpy(x, a, rule.dir[j]);
            sum += rule.w[j] * u(y) * (e2x - eta2(y));
        }
        const double deviation = std::abs(sum / (a * a) - m2 * area / N);

        QuadratureSpec spec2 = spec;
        const double reach = xnorm + eta.support_radius();
        spec2.outer_cut = std::max(spec.outer_cut, reach + 0.5);
        RadialZones zones;
        zones.inner_skip = a;
        zones.taylor_value = taylor_value;
        zones.taylor_err = 2.0 * C * deviation * wgt;
        if (e2x == 0.0 && xnorm > eta.support_radius()) {
            zones.tail = TailRule::closed_form; // integrand vanishes beyond the support reach
            zones.tail_value = 0;
            zones.tail_err = 0;
        } else {
            zones.tail = TailRule::algebraic;
        }
        zones.breakpoints = kink_breakpoints(eta2, xnorm);
        for (double b : kink_breakpoints(u, xnorm)) zones.breakpoints.push_back(b);

        const double kexp = -(N + 2.0 * s);
        auto F = [&](double r, const Point& w) {
            const Point y = axpy(x, r, w);
            return C * u(y) * (e2x - eta2(y)) * std::pow(r, kexp);
        };
        RadialIntegralResult res = singular_radial_integral(F, N, spec2, zones);
        out.direct = {res.value, res.err, res.zones};
    }

    // Decomposed form 2 eta u (-Lap)^s eta - I_s(eta, eta u) - eta I_s(eta, u).
    {
        const ScalarField eta_u = field_product(eta_f, u);
        const OperatorResult le = frac_laplacian(eta_f, x, params, spec);
        const OperatorResult i1 = carre_du_champ(eta_f, eta_u, x, params, spec);
        const OperatorResult i2 = carre_du_champ(eta_f, u, x, params, spec);
        const double ex = eta(x);
        out.decomposed.value = 2.0 * ex * ux * le.value - i1.value - ex * i2.value;
        out.decomposed.err_est =
            std::abs(2.0 * ex * ux) * le.err_est + i1.err_est + std::abs(ex) * i2.err_est;
    }
    return out;
}

OperatorResult diff_quotient(const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
                             const Point& x, const FracParams& params, const QuadratureSpec& spec) {
    const int N = params.dim();
    const double s = params.order();
    const double xnorm = x.norm();
    const ScalarField w = field_product(cutoff_as_field(eta), u);
    const double wx = w(x);
    const double t2 = 0.5 * tau.tau();

    const double reach = xnorm + eta.support_radius();
    QuadratureSpec spec2 = spec;
    spec2.inner_cut = t2;
    spec2.outer_cut = std::max({spec.outer_cut, reach + 0.5, tau.tau() * 2.0});

    RadialZones zones;
    zones.inner_skip = t2; // integrand vanishes below tau/2 by construction
    zones.tail = TailRule::closed_form;
    zones.tail_value = wx * unit_sphere_area(N) * tau.tail_integral(spec2.outer_cut, s);
    zones.tail_err = 0;
    zones.breakpoints = kink_breakpoints(w, xnorm);
    zones.breakpoints.push_back(tau.tau());

    const double kexp = -(N + 2.0 * s);
    auto F = [&](double r, const Point& dir) {
        return tau(r) * (wx - w(axpy(x, r, dir))) * std::pow(r, kexp);
    };
    RadialIntegralResult res = singular_radial_integral(F, N, spec2, zones);
    return {res.value, res.err, res.zones};
}

McResult gagliardo_functional(const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
                              const FracParams& params, const QuadratureSpec& spec) {
    const int N = params.dim();
    const double s = params.order();
    const double r0 = eta.support_radius();
    const ScalarField w = field_product(cutoff_as_field(eta), u);

    auto F = [&](const Point& xx, const Point& yy) {
        const double d = (xx - yy).norm();
        const double t = tau(d);
        if (t == 0.0) return 0.0;
        const double dw = w(xx) - w(yy);
        return t * dw * dw * std::pow(d, -(N + 2.0 * s));
    };
    PairIntegralResult mc = pair_integral(F, r0, N, N + 2.0 * s - 2.0, spec);

    // Pairs with one point outside the support: (w(x))^2 against the exact
    // exterior kernel mass, twice by symmetry.
    QuadratureSpec det = spec.with_tols(1e-8, 1e-12);
    det.angular_rule = w.radial ? 4 : spec.angular_rule;
    std::vector<double> bp;
    for (double k : w.radial_kinks) bp.push_back(k);
    auto radial_tail = [&tau, s](double a) { return tau.tail_integral(a, s); };
    IntegralResult ext = ball_integral(
        [&](const Point& xx) {
            const double wx = w(xx);
            if (wx == 0.0) return 0.0;
            return wx * wx * exterior_shell_mass(xx, r0, radial_tail, spec.angular_rule);
        },
        r0, N, det, bp);

    McResult out;
    out.value = mc.value + 2.0 * ext.value;
    out.stderr_ = mc.stderr_ + 2.0 * ext.err;
    return out;
}

PolarizationResult polarization_check(const ScalarField& u, const CutoffField& eta,
                                      const RadialCutoff& tau, const FracParams& params,
                                      const QuadratureSpec& spec) {
    const int N = params.dim();
    const double r0 = eta.support_radius();
    const ScalarField w = field_product(cutoff_as_field(eta), u);

    // The Monte-Carlo side dominates the tolerance budget, so the nested
    // deterministic side can run at a matched, cheaper accuracy.
    QuadratureSpec inner = spec.with_tols(1e-5, 1e-9);
    inner.angular_rule = std::min(spec.angular_rule, 32);
    QuadratureSpec det = spec.with_tols(1e-6, 1e-10);
    det.angular_rule = w.radial ? 4 : spec.angular_rule;
    std::vector<double> bp;
    for (double k : w.radial_kinks) bp.push_back(k);

    auto integrand = [&](const Point& xx) {
        const double wx = w(xx);
        if (wx == 0.0) return 0.0;
        return wx * diff_quotient(u, eta, tau, xx, params, inner).value;
    };
    IntegralResult lhs = ball_integral(integrand, r0, N, det, bp);
    double angular_err = 0;
    if (!w.radial) {
        QuadratureSpec half = det;
        half.angular_rule = std::max(8, det.angular_rule / 2);
        half.rel_tol = 1e-5;
        angular_err = std::abs(ball_integral(integrand, r0, N, half, bp).value - lhs.value);
    }

    McResult g = gagliardo_functional(u, eta, tau, params, spec);

    PolarizationResult out;
    out.lhs = lhs.value;
    out.rhs = 0.5 * g.value;
    out.residual = out.lhs - out.rhs;
    out.stderr_ = lhs.err + angular_err + 3e-5 * std::abs(lhs.value) + 0.5 * g.stderr_;
    return out;
}

} // namespace fraclap
