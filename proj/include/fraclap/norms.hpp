#pragma once

#include <cstdint>
#include <functional>

#include "fraclap/field.hpp"
#include "fraclap/params.hpp"
#include "fraclap/quad.hpp"

namespace fraclap {

enum class SeminormMethod { radial_exact, mc_pair, grid };

struct SeminormResult {
    double value = 0;
    double stderr_ = 0;
    SeminormMethod method = SeminormMethod::radial_exact;
};

/// Weighted norm int |u(x)| / (1 + |x|^{N+2s}) dx.
SeminormResult weighted_l1s_norm(const ScalarField& u, const FracParams& params,
                                 const QuadratureSpec& spec);

/// Nonlocal tail R^{2s} int_{|x-x0|>R} |u(x)| / |x-x0|^{N+2s} dx.
SeminormResult nonlocal_tail(const ScalarField& u, const Point& x0, double R,
                             const FracParams& params, const QuadratureSpec& spec);

/// Gagliardo seminorm [u]_{W^{s,p}} over the ball of the given radius:
///   ( iint |u(x)-u(y)|^p / |x-y|^{N+sp} dx dy )^{1/p}.
SeminormResult gagliardo_seminorm(const ScalarField& u, double domain_radius, double s, double p,
                                  int dim, const QuadratureSpec& spec);

/// Squared full-space H^s seminorm of a compactly supported field: the pair
/// integral over the support ball plus the exact exterior shell term.
SeminormResult gagliardo_sq_full(const ScalarField& w, double s, int dim,
                                 const QuadratureSpec& spec);

/// sup (1 + |x|^{N+2s}) |u(x)| by adaptive radial-angular scan plus the
/// declared tail envelope. Throws DivergenceWarning when the envelope does
/// not decay fast enough for the weight.
double weighted_linf_norm(const ScalarField& u, const FracParams& params,
                          const QuadratureSpec& spec);

struct HolderFit {
    double exponent = 0;
    double fit_err = 0;
};

/// Empirical Holder exponent of f on the ball: upper-envelope binning of
/// log |f(x)-f(x')| against log |x-x'| over random pairs, slope by least
/// squares. A constant function reports the +infinity sentinel; fewer than
/// 8 occupied distance bins is a FitError.
HolderFit holder_exponent_estimate(const std::function<double(const Point&)>& f,
                                   double domain_radius, int dim, long pairs,
                                   std::uint64_t rng_seed);

} // namespace fraclap
