#pragma once

namespace fraclap {

/// Euler Gamma for x > 0, Lanczos approximation (g = 7, 9 coefficients).
/// Relative accuracy ~1e-13 over the range used here. Throws DomainError
/// for x <= 0.
double gamma_fn(double x);

/// log Gamma for x > 0, same approximation. Avoids overflow of gamma_fn
/// for large arguments.
double log_gamma(double x);

/// Surface measure of the unit sphere S^{N-1}, 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int dim);

/// Volume of the unit ball in R^N.
double unit_ball_volume(int dim);

} // namespace fraclap
