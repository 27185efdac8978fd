#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include <mpfr.h>

#include "fraclap/cutoff.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"
#include "fraclap/params.hpp"
#include "fraclap/point.hpp"

using namespace fraclap;

namespace {

// Arbitrary-precision Gamma oracle (60 decimal digits via MPFR).
double mpfr_gamma_oracle(double x) {
    mpfr_t t, r;
    mpfr_init2(t, 200);
    mpfr_init2(r, 200);
    mpfr_set_d(t, x, MPFR_RNDN);
    mpfr_gamma(r, t, MPFR_RNDN);
    const double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(r);
    return out;
}

// The normalization constant assembled from the oracle pieces.
double mpfr_normalization_oracle(int dim, double s) {
    mpfr_t g1, g2, p, acc, tmp;
    mpfr_inits2(200, g1, g2, p, acc, tmp, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(tmp, 0.5 * dim + s, MPFR_RNDN);
    mpfr_gamma(g1, tmp, MPFR_RNDN);
    mpfr_set_d(tmp, 1.0 - s, MPFR_RNDN);
    mpfr_gamma(g2, tmp, MPFR_RNDN);
    mpfr_const_pi(p, MPFR_RNDN);
    mpfr_pow_si(p, p, dim, MPFR_RNDN); // pi^dim, take sqrt below for pi^{dim/2}
    mpfr_sqrt(p, p, MPFR_RNDN);
    mpfr_set_d(acc, 2.0, MPFR_RNDN);
    mpfr_set_d(tmp, 2.0 * s, MPFR_RNDN);
    mpfr_pow(acc, acc, tmp, MPFR_RNDN); // 2^{2s}
    mpfr_mul_d(acc, acc, s, MPFR_RNDN);
    mpfr_mul(acc, acc, g1, MPFR_RNDN);
    mpfr_div(acc, acc, p, MPFR_RNDN);
    mpfr_div(acc, acc, g2, MPFR_RNDN);
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clears(g1, g2, p, acc, tmp, static_cast<mpfr_ptr>(nullptr));
    return out;
}

} // namespace

TEST_CASE("gamma_fn basic values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.3), DomainError);
}

TEST_CASE("gamma_fn against the arbitrary-precision oracle") {
    for (double x : {0.1, 0.37, 1.5, 2.25, 4.6, 7.9, 11.3}) {
        const double oracle = mpfr_gamma_oracle(x);
        CHECK(gamma_fn(x) == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(log_gamma(20.5) == doctest::Approx(std::lgamma(20.5)).epsilon(1e-13));
}

TEST_CASE("normalization constant closed-form collapse at N=2, s=1/2") {
    const double v = normalization_constant(2, 0.5);
    CHECK(v == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("normalization constant vs oracle at N=3, s=0.25") {
    const double oracle = mpfr_normalization_oracle(3, 0.25);
    CHECK(normalization_constant(3, 0.25) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("normalization constant vanishes like 1/Gamma(1-s) as s -> 1") {
    // Gamma(1-s) divides the constant, so its blow-up at s = 1 drives the
    // value to zero at the classical s(1-s) rate.
    CHECK(normalization_constant(2, 0.999) < normalization_constant(2, 0.9));
    CHECK(normalization_constant(2, 0.9999) < normalization_constant(2, 0.999));
    // The compensated value C * Gamma(1-s) stays on its finite limit curve.
    const double compensated = normalization_constant(2, 0.999) * gamma_fn(1.0 - 0.999);
    CHECK(compensated == doctest::Approx(0.999 * std::pow(2.0, 2 * 0.999) *
                                         gamma_fn(1.0 + 0.999) / std::numbers::pi)
                             .epsilon(1e-10));
}

TEST_CASE("normalization constant domain guards") {
    CHECK_THROWS_AS(normalization_constant(1, 0.5), DomainError);
    CHECK_THROWS_AS(normalization_constant(2, 0.0), DomainError);
    CHECK_THROWS_AS(normalization_constant(2, 1.0), DomainError);
    CHECK_THROWS_AS(normalization_constant(2, -0.2), DomainError);
}

TEST_CASE("normalization constant is positive and continuous in s") {
    double prev = normalization_constant(2, 0.05);
    for (int i = 1; i <= 90; ++i) {
        const double s = 0.05 + 0.9 * i / 90.0;
        const double v = normalization_constant(2, s);
        CHECK(v > 0.0);
        CHECK(std::abs(v - prev) < 0.25); // no jumps on a fine grid
        prev = v;
    }
}

TEST_CASE("FracParams caches the constant") {
    const FracParams p(2, 0.5);
    CHECK(p.c_ns() == doctest::Approx(normalization_constant(2, 0.5)));
    CHECK(p.dim() == 2);
    CHECK(p.order() == 0.5);
}

TEST_CASE("cutoff plateau, support and gradient bound") {
    const CutoffField eta(0.1);
    CHECK(eta(Point{0.3, 0.0}) == 1.0);  // 0.3 < 1 - 4*0.1
    CHECK(eta(Point{0.9, 0.0}) == 0.0);  // 0.9 > 1 - 2*0.1
    CHECK(eta.plateau_radius() == doctest::Approx(0.6));
    CHECK(eta.support_radius() == doctest::Approx(0.8));

    // Finite-difference gradient scan over 10^4 radii.
    const double h = 1e-6;
    double max_grad = 0;
    for (int i = 1; i < 10000; ++i) {
        const double r = 1.0 * i / 10000.0;
        max_grad = std::max(max_grad, std::abs(eta.radial(r + h) - eta.radial(r - h)) / (2 * h));
    }
    CHECK(max_grad <= 1.0 / 0.1 + 1e-6);
    CHECK(max_grad == doctest::Approx(0.9375 / 0.1).epsilon(1e-3)); // quintic max slope

    CHECK_THROWS_AS(CutoffField(0.0), DomainError);
    CHECK_THROWS_AS(CutoffField(0.25), DomainError);
}

TEST_CASE("cutoff profile is C2: derivative values match finite differences") {
    const CutoffField eta(0.05);
    const double h = 1e-5;
    for (double r : {0.81, 0.85, 0.88, 0.895}) {
        const double d1 = (eta.radial(r + h) - eta.radial(r - h)) / (2 * h);
        const double d2 = (eta.radial(r + h) - 2 * eta.radial(r) + eta.radial(r - h)) / (h * h);
        CHECK(eta.radial_d1(r) == doctest::Approx(d1).epsilon(1e-6));
        CHECK(eta.radial_d2(r) == doctest::Approx(d2).epsilon(1e-4));
    }
    // Second derivative vanishes at both seams (C2 smoothstep).
    CHECK(eta.radial_d2(0.8 + 1e-12) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(eta.radial_d2(0.9 - 1e-12) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("radial cutoff is exactly piecewise linear") {
    const RadialCutoff tau(0.2);
    CHECK(tau(0.05) == 0.0);
    CHECK(tau(0.1) == 0.0);
    CHECK(tau(0.15) == doctest::Approx(0.5));
    CHECK(tau(0.2) == 1.0);
    CHECK(tau(5.0) == 1.0);
    CHECK_THROWS_AS(RadialCutoff(0.0), DomainError);
    CHECK_THROWS_AS(RadialCutoff(0.5), DomainError);
}

TEST_CASE("radial cutoff family is monotone in tau") {
    const RadialCutoff a(0.1), b(0.2);
    for (int i = 0; i < 100; ++i) {
        const double t = 0.5 * i / 99.0;
        CHECK(a(t) >= b(t)); // smaller tau dominates pointwise
    }
}

TEST_CASE("holder transfer exponents") {
    auto t1 = holder_transfer_exponents(0.8, 0.5);
    CHECK(t1.gamma_is == doctest::Approx(0.6));
    CHECK(t1.beta == doctest::Approx(0.8 / 1.8));
    CHECK(t1.gamma_eta == doctest::Approx((0.8 - 1.0 + 1.0) * 0.8 / 1.8));

    auto t2 = holder_transfer_exponents(0.9, 0.75);
    CHECK(t2.gamma_is == doctest::Approx(0.4));

    // gamma_eta = gamma_is * beta exactly when s > 1/2.
    CHECK(t2.gamma_eta == doctest::Approx(t2.gamma_is * t2.beta).epsilon(1e-15));

    CHECK_THROWS_AS(holder_transfer_exponents(0.2, 0.5), DomainError);
    CHECK_THROWS_AS(holder_transfer_exponents(0.95, 0.25), DomainError);
    CHECK_THROWS_AS(holder_transfer_exponents(0.5, 1.2), DomainError);
}
