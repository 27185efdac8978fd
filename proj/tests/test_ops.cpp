#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fraclap/cutoff.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/ops.hpp"
#include "fraclap/presets.hpp"
#include "fraclap/rng.hpp"

using namespace fraclap;

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureSpec tight() {
    QuadratureSpec spec;
    spec.rel_tol = 1e-7;
    spec.abs_tol = 1e-11;
    return spec;
}

ScalarField dilated(const ScalarField& f, double lambda) {
    ScalarField out = f;
    out.eval = [f, lambda](const Point& x) { return f(lambda * x); };
    out.gradient = [f, lambda](const Point& x) {
        Point g = f.gradient(lambda * x);
        g *= lambda;
        return g;
    };
    out.laplacian = [f, lambda](const Point& x) {
        return lambda * lambda * f.laplacian(lambda * x);
    };
    if (f.tail_envelope)
        out.tail_envelope = [f, lambda](double r) { return f.tail_envelope(lambda * r); };
    if (std::isfinite(f.support_radius)) out.support_radius = f.support_radius / lambda;
    out.radial_kinks.clear();
    for (double k : f.radial_kinks) out.radial_kinks.push_back(k / lambda);
    return out;
}

// Midpoint tensor-grid value of D^s at x = 0: brute force over the disk of
// radius L plus the exact closed-form remainder outside, where the product
// field vanishes and the kernel truncation is inactive.
double diff_quotient_grid_oracle(const ScalarField& u, const CutoffField& eta,
                                 const RadialCutoff& tau, const Point& x, double s, int n) {
    const ScalarField w = field_product(cutoff_as_field(eta), u);
    const double wx = w(x);
    const double L = 1.6;
    const double h = 2.0 * L / n;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Point y{-L + (i + 0.5) * h, -L + (j + 0.5) * h};
            if (y.norm() > L) continue;
            const double d = (x - y).norm();
            const double t = tau(d);
            if (t == 0.0) continue;
            acc += t * (wx - w(y)) * std::pow(d, -(2.0 + 2.0 * s)) * h * h;
        }
    }
    acc += wx * unit_sphere_area(2) * RadialCutoff::plain_tail_integral(L, s);
    return acc;
}

} // namespace

TEST_CASE("frac_laplacian of a constant vanishes") {
    const ScalarField one = preset_field("constant");
    const FracParams P(2, 0.5);
    for (double r : {0.0, 0.7, 2.0}) {
        auto res = frac_laplacian(one, Point{r, -0.2}, P, tight());
        CHECK(std::abs(res.value) <= res.err_est + 1e-12);
    }
}

TEST_CASE("frac_laplacian of an affine field vanishes for s > 1/2") {
    const ScalarField aff = preset_field("affine");
    const FracParams P(2, 0.75);
    auto res = frac_laplacian(aff, Point{0.4, 0.1}, P, tight());
    CHECK(std::abs(res.value) <= res.err_est + 1e-10);
}

TEST_CASE("frac_laplacian guards: affine with s <= 1/2, Holder smoothness") {
    const FracParams P(2, 0.5);
    CHECK_THROWS_AS(frac_laplacian(preset_field("affine"), Point{0.0, 0.0}, P, tight()),
                    DomainError);
    CHECK_THROWS_AS(frac_laplacian(preset_field("holder-cusp(0.6)"), Point{0.0, 0.0}, P, tight()),
                    DomainError);
    CHECK_THROWS_AS(frac_laplacian(preset_field("getoor"), Point{0.0, 0.0}, P, tight()),
                    DomainError);
}

TEST_CASE("frac_laplacian of the Gaussian matches the Fourier oracle") {
    const ScalarField g = preset_field("gaussian");
    QuadratureSpec spec = tight();
    spec.rel_tol = 1e-8;
    for (double s : {0.25, 0.5, 0.75}) {
        const FracParams P(2, s);
        for (double r : {0.0, 0.3, 0.6}) {
            const double v = frac_laplacian(g, Point{r, 0.0}, P, spec).value;
            const double o = gaussian_fourier_oracle(s, r, 2);
            CHECK(v == doctest::Approx(o).epsilon(1e-6));
        }
    }
    const double v = frac_laplacian(g, Point{0.0, 0.0}, FracParams(2, 0.5), spec).value;
    CHECK(v == doctest::Approx(kPi).epsilon(1e-8));
}

TEST_CASE("PV and second-difference forms agree at random points") {
    std::mt19937_64 rng = make_stream(91, 0);
    const FracParams P(2, 0.6);
    QuadratureSpec spec = tight();
    for (int k = 0; k < 20; ++k) {
        const Point c = sample_ball(2, 0.4, rng);
        const ScalarField f = gaussian_bump(c, 0.8 + 0.4 * uniform01(rng), 1.0);
        const Point x = sample_ball(2, 0.8, rng);
        const auto a = frac_laplacian(f, x, P, spec);
        const auto b = frac_laplacian_pv(f, x, P, spec, 0.02);
        CHECK(std::abs(a.value - b.value) <= a.err_est + b.err_est + 1e-10);
    }
}

TEST_CASE("fractional scaling law") {
    const ScalarField g = preset_field("gaussian");
    QuadratureSpec spec = tight();
    for (double s : {0.25, 0.75}) {
        const FracParams P(2, s);
        for (double lambda : {0.5, 2.0}) {
            const ScalarField gl = dilated(g, lambda);
            const Point x{0.35, -0.15};
            const auto lhs = frac_laplacian(gl, x, P, spec);
            const auto rhs = frac_laplacian(g, lambda * x, P, spec);
            const double scale = std::pow(lambda, 2.0 * s);
            CHECK(std::abs(lhs.value - scale * rhs.value) <=
                  3.0 * (lhs.err_est + scale * rhs.err_est) + 1e-9);
        }
    }
}

TEST_CASE("rotation invariance for radial fields") {
    const ScalarField g = preset_field("gaussian");
    const FracParams P(2, 0.5);
    QuadratureSpec spec = tight();
    const double r = 0.45;
    const double ref = frac_laplacian(g, Point{r, 0.0}, P, spec).value;
    for (int k = 1; k < 8; ++k) {
        const double th = 2.0 * kPi * k / 8.0;
        const auto res = frac_laplacian(g, Point{r * std::cos(th), r * std::sin(th)}, P, spec);
        CHECK(std::abs(res.value - ref) <= 3.0 * (res.err_est + 1e-10) + 1e-8);
    }
}

TEST_CASE("frac_laplacian is linear") {
    const ScalarField f = gaussian_bump(Point{0.2, 0.0}, 1.0, 1.0);
    const ScalarField g = gaussian_bump(Point{-0.1, 0.3}, 0.7, 0.8);
    const ScalarField h = field_sum(2.0, f, -3.0, g);
    const FracParams P(2, 0.5);
    QuadratureSpec spec = tight();
    const Point x{0.1, 0.1};
    const auto rf = frac_laplacian(f, x, P, spec);
    const auto rg = frac_laplacian(g, x, P, spec);
    const auto rh = frac_laplacian(h, x, P, spec);
    CHECK(std::abs(rh.value - 2.0 * rf.value + 3.0 * rg.value) <=
          rh.err_est + 2.0 * rf.err_est + 3.0 * rg.err_est + 1e-9);
}

TEST_CASE("carre du champ: constant argument annihilates") {
    const FracParams P(2, 0.5);
    const ScalarField one = preset_field("constant");
    const ScalarField g = preset_field("gaussian");
    for (double r : {0.0, 0.5, 1.1}) {
        const auto res = carre_du_champ(one, g, Point{r, 0.1}, P, tight());
        CHECK(std::abs(res.value) <= res.err_est + 1e-12);
    }
}

TEST_CASE("carre du champ: nonnegativity on the diagonal and symmetry") {
    std::mt19937_64 rng = make_stream(17, 0);
    const FracParams P(2, 0.4);
    QuadratureSpec spec = tight();
    for (int k = 0; k < 20; ++k) {
        const ScalarField f = gaussian_bump(sample_ball(2, 0.4, rng), 0.6 + uniform01(rng), 1.0);
        const ScalarField g = gaussian_bump(sample_ball(2, 0.4, rng), 0.6 + uniform01(rng), 0.7);
        const Point x = sample_ball(2, 0.8, rng);
        const auto ff = carre_du_champ(f, f, x, P, spec);
        CHECK(ff.value >= -ff.err_est - 1e-12);
        const auto fg = carre_du_champ(f, g, x, P, spec);
        const auto gf = carre_du_champ(g, f, x, P, spec);
        CHECK(std::abs(fg.value - gf.value) <= fg.err_est + gf.err_est + 1e-10);
    }
}

TEST_CASE("carre du champ admits Holder x Lipschitz pairs and rejects thin ones") {
    const FracParams P25(2, 0.25);
    const ScalarField cusp = preset_field("holder-cusp(0.4)");
    const ScalarField g = preset_field("gaussian");
    const auto res = carre_du_champ(cusp, g, Point{0.1, 0.0}, P25, tight());
    CHECK(std::isfinite(res.value));

    // 0.3 + 0.3 <= 2 * 0.4: no integrability margin at the diagonal.
    const FracParams P40(2, 0.4);
    const ScalarField thin = preset_field("holder-cusp(0.3)");
    CHECK_THROWS_AS(carre_du_champ(thin, thin, Point{0.0, 0.0}, P40, tight()), DomainError);
}

TEST_CASE("Leibniz residual vanishes when one factor is constant") {
    const FracParams P(2, 0.5);
    const ScalarField one = preset_field("constant");
    const ScalarField g = preset_field("gaussian");
    const auto r = leibniz_residual(one, g, Point{0.3, -0.2}, P, tight());
    CHECK(std::abs(r.residual) <= r.err_est + 1e-10);
}

TEST_CASE("Leibniz residual for equal Gaussian bumps at random points") {
    std::mt19937_64 rng = make_stream(33, 0);
    const FracParams P(2, 0.5);
    QuadratureSpec spec = tight();
    const ScalarField f = gaussian_bump(Point{0.1, 0.05}, 0.9, 1.0);
    for (int k = 0; k < 10; ++k) {
        const Point x = sample_ball(2, 0.8, rng);
        const auto r = leibniz_residual(f, f, x, P, spec);
        CHECK(std::abs(r.residual) <= 3.0 * r.err_est + 1e-9);
    }
}

TEST_CASE("Leibniz residual is tiny relative to the term scale") {
    std::mt19937_64 rng = make_stream(47, 0);
    QuadratureSpec spec = tight();
    spec.rel_tol = 1e-8;
    for (double s : {0.25, 0.5, 0.75}) {
        const FracParams P(2, s);
        for (int k = 0; k < 5; ++k) {
            const ScalarField f =
                gaussian_bump(sample_ball(2, 0.4, rng), 0.7 + 0.6 * uniform01(rng), 1.0);
            const ScalarField g =
                gaussian_bump(sample_ball(2, 0.4, rng), 0.7 + 0.6 * uniform01(rng), 1.0);
            const Point x = sample_ball(2, 0.6, rng);
            const auto r = leibniz_residual(f, g, x, P, spec);
            CHECK(std::abs(r.residual) <= 1e-5 * r.scale);
        }
    }
}

TEST_CASE("source field: both printed forms agree") {
    const FracParams P(2, 0.5);
    const CutoffField eta(0.1);
    QuadratureSpec spec = tight();

    SUBCASE("u supported inside, x outside the cutoff support") {
        const ScalarField u = preset_field("bump(0.5)");
        const Point x{0.95, 0.0};
        const auto r = source_field(u, eta, x, P, spec);
        CHECK(r.direct.value < 0.0); // reduces to minus a positive integral
        CHECK(std::abs(r.direct.value - r.decomposed.value) <=
              3.0 * (r.direct.err_est + r.decomposed.err_est) + 1e-9);
    }
    SUBCASE("u identically zero") {
        ScalarField z = preset_field("gaussian");
        z.eval = [](const Point&) { return 0.0; };
        z.gradient = [](const Point& x) { return Point::zero(x.dim()); };
        z.laplacian = [](const Point&) { return 0.0; };
        const auto r = source_field(z, eta, Point{0.3, 0.1}, P, spec);
        CHECK(std::abs(r.direct.value) <= 1e-10);
        CHECK(std::abs(r.decomposed.value) <= 1e-10);
    }
    SUBCASE("u constant reduces to the eta-only Leibniz identity") {
        const ScalarField one = preset_field("constant");
        for (double r0 : {0.2, 0.7, 0.95}) {
            const Point x{r0, -0.1};
            const auto r = source_field(one, eta, x, P, spec);
            CHECK(std::abs(r.direct.value - r.decomposed.value) <=
                  3.0 * (r.direct.err_est + r.decomposed.err_est) + 1e-9);
        }
    }
    SUBCASE("generic smooth u at interior points") {
        const ScalarField u = preset_field("gaussian");
        for (double r0 : {0.0, 0.5, 0.75}) {
            const Point x{r0, 0.2 * r0};
            const auto r = source_field(u, eta, x, P, spec);
            CHECK(std::abs(r.direct.value - r.decomposed.value) <=
                  3.0 * (r.direct.err_est + r.decomposed.err_est) + 1e-9);
        }
    }
}

TEST_CASE("diff quotient: vanishing product, plateau positivity") {
    const FracParams P(2, 0.5);
    const CutoffField eta(0.1);
    const RadialCutoff tau(0.2);
    QuadratureSpec spec = tight();

    ScalarField zero = preset_field("constant");
    zero.eval = [](const Point&) { return 0.0; };
    const auto r0 = diff_quotient(zero, eta, tau, Point{0.3, 0.0}, P, spec);
    CHECK(std::abs(r0.value) <= 1e-12);

    // u = 1 deep in the plateau: the integrand (1 - eta(y)) is nonnegative
    // and positive outside the support.
    const ScalarField one = preset_field("constant");
    const auto r1 = diff_quotient(one, eta, tau, Point{0.0, 0.0}, P, spec);
    CHECK(r1.value > 0.1);
}

TEST_CASE("diff quotient against the tensor-grid oracle, tau ordering") {
    const FracParams P(2, 0.5);
    const CutoffField eta(0.1);
    const ScalarField u = preset_field("gaussian");
    QuadratureSpec spec = tight();
    const Point x{0.0, 0.0}; // (eta u) is maximal here, kernel ordering strict

    double values[2];
    int idx = 0;
    for (double tv : {0.2, 0.1}) {
        const RadialCutoff tau(tv);
        const double v = diff_quotient(u, eta, tau, x, P, spec).value;
        const double oracle = diff_quotient_grid_oracle(u, eta, tau, x, 0.5, 600);
        CHECK(v == doctest::Approx(oracle).epsilon(2e-2));
        values[idx++] = v;
    }
    CHECK(values[1] > values[0]); // smaller tau keeps strictly more mass
}

TEST_CASE("gagliardo functional: zero field, nonnegativity, tau monotonicity") {
    const FracParams P(2, 0.5);
    const CutoffField eta(0.1);
    QuadratureSpec spec;
    spec.mc_samples = 200000;
    spec.mc_rel_tol = 0.05;

    ScalarField zero = preset_field("constant");
    zero.eval = [](const Point&) { return 0.0; };
    const auto g0 = gagliardo_functional(zero, eta, RadialCutoff(0.2), P, spec);
    CHECK(g0.value == doctest::Approx(0.0).epsilon(1e-12));

    const ScalarField u = preset_field("gaussian");
    double prev = -1;
    for (double tv : {0.4, 0.2, 0.1}) {
        const auto g = gagliardo_functional(u, eta, RadialCutoff(tv), P, spec);
        CHECK(g.value >= 0.0);
        CHECK(g.value >= prev - 1e-12); // same seed: pathwise monotone
        prev = g.value;
    }
}

TEST_CASE("polarization identity and quadratic scaling") {
    const FracParams P(2, 0.5);
    const CutoffField eta(0.1);
    const RadialCutoff tau(0.2);
    QuadratureSpec spec;
    spec.mc_samples = 400000;
    spec.mc_rel_tol = 0.05;
    spec.rel_tol = 1e-7;
    spec.abs_tol = 1e-11;

    // Polynomial-restricted bump: (1 + x1 + x2^2) * bump(0.9).
    const ScalarField base = preset_field("bump(0.9)");
    ScalarField u = base;
    u.eval = [base](const Point& x) { return (1.0 + x[0] + x[1] * x[1]) * base(x); };
    u.gradient = {};
    u.laplacian = {};
    u.radial = false;

    const auto r = polarization_check(u, eta, tau, P, spec);
    CHECK(std::abs(r.residual) <= 3.0 * r.stderr_);

    ScalarField u2 = u;
    u2.eval = [base](const Point& x) { return 2.0 * (1.0 + x[0] + x[1] * x[1]) * base(x); };
    const auto r2 = polarization_check(u2, eta, tau, P, spec);
    CHECK(r2.lhs == doctest::Approx(4.0 * r.lhs).epsilon(2e-3));
    CHECK(r2.rhs == doctest::Approx(4.0 * r.rhs).epsilon(2e-3));
    CHECK(std::abs(r2.residual) <= 3.0 * r2.stderr_);
}

TEST_CASE("Cauchy-Schwarz structure of the truncated pair form") {
    std::mt19937_64 rng = make_stream(59, 0);
    const int N = 2;
    const double s = 0.5;
    const RadialCutoff tau(0.2);
    const double R = 0.8;
    QuadratureSpec spec;
    spec.mc_samples = 200000;
    spec.mc_rel_tol = 0.2;
    spec.mc_abs_tol = 1e-4;

    const ScalarField envelope = preset_field("bump(0.8)");
    for (int k = 0; k < 10; ++k) {
        const ScalarField a = gaussian_bump(sample_ball(2, 0.3, rng), 0.5 + uniform01(rng), 1.0);
        const ScalarField b = gaussian_bump(sample_ball(2, 0.3, rng), 0.5 + uniform01(rng), 1.0);
        const ScalarField w = field_product(a, envelope);
        const ScalarField z = field_product(b, envelope);

        auto pair_form = [&](const ScalarField& p, const ScalarField& q) {
            auto F = [&](const Point& xx, const Point& yy) {
                const double d = (xx - yy).norm();
                const double t = tau(d);
                if (t == 0.0) return 0.0;
                return t * (p(xx) - p(yy)) * (q(xx) - q(yy)) * std::pow(d, -(N + 2.0 * s));
            };
            auto mc = pair_integral(F, R, N, N + 2.0 * s - 2.0, spec);
            auto radial_tail = [&](double aa) { return tau.tail_integral(aa, s); };
            auto ext = ball_integral(
                [&](const Point& xx) {
                    return p(xx) * q(xx) * exterior_shell_mass(xx, R, radial_tail, 32);
                },
                R, N, spec.with_tols(1e-7, 1e-11), {});
            return std::pair<double, double>(mc.value + 2.0 * ext.value, mc.stderr_);
        };

        const auto [czw, e1] = pair_form(z, w);
        const auto [czz, e2] = pair_form(z, z);
        const auto [cww, e3] = pair_form(w, w);
        CHECK(czw <= std::sqrt(std::max(czz + 3 * e2, 0.0)) *
                         std::sqrt(std::max(cww + 3 * e3, 0.0)) +
                     3.0 * e1 + 1e-9);
    }
}
