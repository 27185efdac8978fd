#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fraclap/cutoff.hpp"
#include "fraclap/point.hpp"

namespace fraclap {

/// Declared regularity class of a field. `holder` carries its exponent in
/// ScalarField::holder_alpha; `lipschitz` is Holder with exponent 1.
enum class Smoothness { discontinuous, holder, lipschitz, c2, cinf, analytic };

/// Declared behaviour at infinity.
enum class Decay {
    compact_support, // vanishes outside B_{support_radius}
    bounded,         // |u| <= bound everywhere, no decay assumed
    weighted_l1      // integrable against (1+|x|^{N+2s})^{-1}
};

/// A real-valued function on R^N together with the metadata the quadrature
/// engines need: smoothness and decay class, optional analytic first and
/// second derivative data, optional sup-envelope for tails.
struct ScalarField {
    std::function<double(const Point&)> eval;

    Smoothness smoothness = Smoothness::c2;
    double holder_alpha = 1.0; // exponent when smoothness == holder

    Decay decay = Decay::bounded;
    double support_radius = std::numeric_limits<double>::infinity();
    double bound = std::numeric_limits<double>::quiet_NaN(); // sup |u| when known
    /// r -> sup_{|z| >= r} |u(z)|; used to bound truncated tails.
    std::function<double(double)> tail_envelope;

    std::function<Point(const Point&)> gradient;   // optional
    std::function<double(const Point&)> laplacian; // optional, trace of Hessian

    bool radial = false;
    /// Radii |x| where the field loses smoothness (support edges, glue
    /// seams); quadrature splits panels there.
    std::vector<double> radial_kinks;

    std::string name;

    double operator()(const Point& x) const { return eval(x); }

    /// Holder exponent implied by the smoothness tag (1 for Lipschitz and
    /// smoother, 0 for discontinuous).
    double holder_exponent() const {
        switch (smoothness) {
            case Smoothness::discontinuous: return 0.0;
            case Smoothness::holder: return holder_alpha;
            default: return 1.0;
        }
    }

    bool at_least_c2() const {
        return smoothness == Smoothness::c2 || smoothness == Smoothness::cinf ||
               smoothness == Smoothness::analytic;
    }
    bool has_derivatives() const { return static_cast<bool>(gradient) && static_cast<bool>(laplacian); }
};

/// a*f + b*g with metadata combined conservatively.
ScalarField field_sum(double a, const ScalarField& f, double b, const ScalarField& g);

/// Pointwise product with derivative data propagated by the product rule.
ScalarField field_product(const ScalarField& f, const ScalarField& g);

ScalarField field_scale(double c, const ScalarField& f);

/// The cutoff eta as a ScalarField (C^2, compactly supported).
ScalarField cutoff_as_field(const CutoffField& eta);

inline Smoothness min_smoothness(Smoothness a, Smoothness b) {
    return static_cast<int>(a) < static_cast<int>(b) ? a : b;
}

} // namespace fraclap
