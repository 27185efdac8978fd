#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fraclap/point.hpp"

namespace fraclap {

/// Shared knobs for the quadrature engines.
struct QuadratureSpec {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    /// Radius below which operators switch to the Taylor value of their
    /// regularized integrand.
    double taylor_radius = 1e-4;
    /// Boundary between the singular inner zone and the middle annuli.
    double inner_cut = 1e-3;
    /// Radius beyond which tails are integrated analytically or through the
    /// r -> R/t substitution.
    double outer_cut = 8.0;
    /// Order parameter of the sphere rule (node count on S^1).
    int angular_rule = 64;
    long mc_samples = 200000;
    /// Monte-Carlo runs get their own, looser convergence targets.
    double mc_rel_tol = 1e-3;
    double mc_abs_tol = 1e-7;
    std::uint64_t rng_seed = 12345;
    /// Monte-Carlo worker threads; 0 picks the hardware count. Batch
    /// reduction order is fixed, so the result is thread-count invariant.
    int n_threads = 1;

    QuadratureSpec with_tols(double rel, double abs) const {
        QuadratureSpec s = *this;
        s.rel_tol = rel;
        s.abs_tol = abs;
        return s;
    }
};

struct IntegralResult {
    double value = 0;
    double err = 0;
};

/// Adaptive Gauss-Kronrod (7,15) on [a,b]. Splits the worst panel until the
/// summed error estimate meets max(abs_tol, rel_tol*|value|). Endpoints are
/// never evaluated, so integrable endpoint singularities are admissible.
/// Throws ConvergenceFailure (zone = label) when the panel budget runs out.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_subdivisions,
                                  std::span<const double> breakpoints = {},
                                  const char* zone_label = "adaptive");

/// Quadrature rule on the unit sphere S^{dim-1}; weights sum to the surface
/// measure. Antipodally symmetric for even orders, which the operators rely
/// on to cancel odd integrand terms exactly.
struct SphereRule {
    std::vector<Point> dir;
    std::vector<double> w;
};

const SphereRule& sphere_rule(int dim, int order);

enum class TailRule { none, algebraic, closed_form };

/// Zone assembly options for the radial engine.
struct RadialZones {
    /// [0, inner_skip) is replaced by a caller-computed Taylor value.
    double inner_skip = 0;
    double taylor_value = 0;
    double taylor_err = 0;
    TailRule tail = TailRule::algebraic;
    double tail_value = 0; // for TailRule::closed_form
    double tail_err = 0;
    std::vector<double> breakpoints; // forced radial panel edges
};

struct ZoneBreakdown {
    double inner = 0, middle = 0, tail = 0;
    double inner_err = 0, middle_err = 0, tail_err = 0;
};

struct RadialIntegralResult {
    double value = 0;
    double err = 0;
    ZoneBreakdown zones;
};

/// Integral over R^dim of F expressed in polar form:
///   int_0^inf r^{dim-1} [ int_{S^{dim-1}} F(r, w) dsigma(w) ] dr,
/// split into the inner zone [inner_skip, inner_cut] (plus the caller's
/// Taylor value below inner_skip), adaptive middle annuli
/// [inner_cut, outer_cut], and the declared tail.
RadialIntegralResult singular_radial_integral(const std::function<double(double, const Point&)>& F,
                                              int dim, const QuadratureSpec& spec,
                                              const RadialZones& zones = {});

/// Deterministic integral of phi over the ball of radius R (polar product
/// quadrature, adaptive in the radius).
IntegralResult ball_integral(const std::function<double(const Point&)>& phi, double R, int dim,
                             const QuadratureSpec& spec,
                             std::span<const double> radial_breakpoints = {});

/// Distance from x inside the ball of radius R to the sphere along dir.
double ball_exit_radius(const Point& x, const Point& dir, double R);

/// Exact integral over {|y| > R} of k(|x-y|) dy for a point x inside the
/// ball, where radial_tail(a) = int_a^inf k(t) t^{dim-1} dt is supplied in
/// closed form; only the angular average is quadratured.
double exterior_shell_mass(const Point& x, double R,
                           const std::function<double(double)>& radial_tail, int angular_order);

struct PairIntegralResult {
    double value = 0;
    double stderr_ = 0;
    long samples = 0;
};

/// Monte-Carlo estimate of the double integral of F over B_R x B_R with
/// stratified importance sampling of the pair separation, density
/// proportional to |x-y|^{-diag_exponent} near the diagonal. Deterministic
/// given the seed; batch streams are reduced in index order so thread count
/// does not change the result. Throws SingularityError when diag_exponent
/// >= dim (non-integrable diagonal) and ConvergenceFailure when the sample
/// budget leaves stderr above tolerance.
PairIntegralResult pair_integral(const std::function<double(const Point&, const Point&)>& F,
                                 double support_radius, int dim, double diag_exponent,
                                 const QuadratureSpec& spec);

} // namespace fraclap
