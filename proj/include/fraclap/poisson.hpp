#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "fraclap/field.hpp"
#include "fraclap/ops.hpp"
#include "fraclap/params.hpp"
#include "fraclap/quad.hpp"

namespace fraclap {

/// Dirichlet problem for the ball: s-harmonic inside B_rho, equal to the
/// exterior datum outside.
struct BallProblem {
    double rho = 1.0;
    ScalarField exterior; // continuous near the sphere and weighted-integrable
    FracParams params;
    QuadratureSpec spec;
};

/// The printed closed form
///   P_rho(x,y) = C_{N,s} ((rho^2-|x|^2)/(|y|^2-rho^2))^s |x-y|^{-N},
/// with the representation-formula constant. Requires |x| < rho < |y|.
double poisson_kernel(double rho, const Point& x, const Point& y, const FracParams& params);

/// The constant that actually normalizes the kernel to unit exterior mass:
/// Gamma(N/2) sin(pi s) / pi^{N/2+1}.
double poisson_kernel_constant(const FracParams& params);

/// Total exterior mass of the printed form: C_{N,s} / kernel constant
/// = 4^s Gamma(N/2+s) Gamma(1+s) / Gamma(N/2).
double kernel_mass_ratio(const FracParams& params);

/// Kernel rescaled to the reproducing constant; the density the solver and
/// the sampler use.
double normalized_poisson_kernel(double rho, const Point& x, const Point& y,
                                 const FracParams& params);

/// Quadrature of the normalized kernel over the exterior of the ball: the
/// empirical check that the discovered constant reproduces constants,
/// result = 1 up to the reported error. The boundary singularity
/// (|y|^2-rho^2)^{-s} is removed by the t = (|y|^2-rho^2)^{1-s}
/// substitution.
IntegralResult kernel_normalization(double rho, const Point& x, const FracParams& params,
                                    const QuadratureSpec& spec);

/// Poisson integral u_h(x) = int_{B_rho^c} P(x,y) h(y) dy over the
/// normalized kernel; near-boundary shell, middle shell and weighted tail
/// are integrated separately.
OperatorResult solve_dirichlet(const BallProblem& problem, const Point& x);

/// Exact partial derivative of the printed kernel in x (truncated Taylor
/// arithmetic on the two x-dependent factors), |iota| <= 6.
double kernel_derivative(double rho, const Point& x, const Point& y, std::span<const int> iota,
                         const FracParams& params);

/// Differentiation under the integral sign: D^iota u_h(x) with the kernel
/// derivative of the normalized kernel.
OperatorResult solution_derivative(const BallProblem& problem, const Point& x,
                                   std::span<const int> iota);

/// One draw of the exit point: y in B_rho^c with density P_rho(x, .). At
/// the center the radial law is exact (rho^2/|y|^2 is Beta(s, 1-s));
/// elsewhere rejection from the center law with the closed-form envelope.
Point wos_sample(double rho, const Point& x, const FracParams& params, std::mt19937_64& rng);

struct WosResult {
    double mean = 0;
    double stderr_ = 0;
    long samples = 0;
};

/// Monte-Carlo solve: sample mean of the datum at exit points. Unbiased
/// for u_h(x); deterministic given the seed, batch streams reduced in
/// order.
WosResult wos_solve(const BallProblem& problem, const Point& x, long n_samples,
                    std::uint64_t seed);

/// The solution glued to its datum: u_h inside the ball (memoized solves,
/// derivatives through the kernel jets), h outside.
ScalarField poisson_solution_field(const BallProblem& problem);

/// (-Lap)^s applied to the materialized solution at x; small residuals
/// certify s-harmonicity. Requires |x| <= 0.8 rho.
double sharmonicity_residual(const BallProblem& problem, const Point& x,
                             const QuadratureSpec& op_spec);

} // namespace fraclap
