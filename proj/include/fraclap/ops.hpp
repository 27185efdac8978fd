#pragma once

#include "fraclap/cutoff.hpp"
#include "fraclap/field.hpp"
#include "fraclap/params.hpp"
#include "fraclap/point.hpp"
#include "fraclap/quad.hpp"

namespace fraclap {

struct OperatorResult {
    double value = 0;
    double err_est = 0;
    ZoneBreakdown zones;
};

/// Pointwise fractional Laplacian through the symmetric second-difference
/// form,
///   (C_{N,s}/2) int [2u(x) - u(x+y) - u(x-y)] / |y|^{N+2s} dy.
/// Requires a C^2 smoothness tag; the ball below the Taylor radius is
/// summed in closed form from the Laplacian of u, tails use the declared
/// decay class.
OperatorResult frac_laplacian(const ScalarField& u, const Point& x, const FracParams& params,
                              const QuadratureSpec& spec);

/// Principal-value first-difference form with symmetric annular truncation
/// at trunc_radius; the omitted annulus is bounded by the Taylor remainder
/// and charged to err_est. Cross-validates frac_laplacian.
OperatorResult frac_laplacian_pv(const ScalarField& u, const Point& x, const FracParams& params,
                                 const QuadratureSpec& spec, double trunc_radius);

/// Fourier-multiplier value of the fractional Laplacian of the unit
/// Gaussian exp(-pi |x|^2), computed by 1-D radial quadrature of
/// (2 pi |xi|)^{2s} against its transform. The (2 pi |xi|)^{2s} symbol is
/// the one the normalization constant realizes under the
/// exp(-2 pi i x.xi) transform convention; see the convention test.
double gaussian_fourier_oracle(double s, double xnorm, int dim);

/// Carre du champ I_s(f,g)(x) = C_{N,s} int (f(x)-f(y))(g(x)-g(y)) /
/// |x-y|^{N+2s} dy. Admits Holder fields as long as the combined increment
/// exponent exceeds 2s.
OperatorResult carre_du_champ(const ScalarField& f, const ScalarField& g, const Point& x,
                              const FracParams& params, const QuadratureSpec& spec);

struct LeibnizResult {
    double residual = 0;
    double err_est = 0;
    double scale = 0; // largest |term|, for relative thresholds
};

/// Defect of the fractional Leibniz rule,
///   (-Lap)^s(fg) - f (-Lap)^s g - g (-Lap)^s f + I_s(f,g),
/// which vanishes identically in exact arithmetic.
LeibnizResult leibniz_residual(const ScalarField& f, const ScalarField& g, const Point& x,
                               const FracParams& params, const QuadratureSpec& spec);

struct SourceFieldResult {
    OperatorResult direct;     // C_{N,s} int u(y) (eta^2(x) - eta^2(y)) / |x-y|^{N+2s} dy
    OperatorResult decomposed; // 2 eta u (-Lap)^s eta - I_s(eta, eta u) - eta I_s(eta, u)
};

/// Both printed forms of the localized source; they agree within combined
/// error estimates.
SourceFieldResult source_field(const ScalarField& u, const CutoffField& eta, const Point& x,
                               const FracParams& params, const QuadratureSpec& spec);

/// Regularized difference quotient
///   D^s u(x) = int eta_tau(|x-y|) (eta(x)u(x) - eta(y)u(y)) / |x-y|^{N+2s} dy.
/// The kernel truncation removes the diagonal, so no singular machinery is
/// involved.
OperatorResult diff_quotient(const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
                             const Point& x, const FracParams& params, const QuadratureSpec& spec);

struct McResult {
    double value = 0;
    double stderr_ = 0;
};

/// The truncated Gagliardo energy
///   G(u) = iint eta_tau(|x-y|) (eta(x)u(x) - eta(y)u(y))^2 / |x-y|^{N+2s},
/// Monte-Carlo over the support pair box plus the exact exterior shell term.
McResult gagliardo_functional(const ScalarField& u, const CutoffField& eta, const RadialCutoff& tau,
                              const FracParams& params, const QuadratureSpec& spec);

struct PolarizationResult {
    double residual = 0;
    double stderr_ = 0;
    double lhs = 0; // int (eta u) D^s u dx
    double rhs = 0; // G/2
};

/// Checks int (eta u) D^s u = G/2 with the two sides computed by
/// independent schemes (nested deterministic quadrature vs Monte Carlo).
PolarizationResult polarization_check(const ScalarField& u, const CutoffField& eta,
                                      const RadialCutoff& tau, const FracParams& params,
                                      const QuadratureSpec& spec);

} // namespace fraclap
