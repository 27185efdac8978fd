#pragma once

#include <vector>

#include "fraclap/point.hpp"

namespace fraclap {

/// Radial C^2 cutoff: identically 1 on B_{1-4*delta}, identically 0 outside
/// B_{1-2*delta}, quintic smoothstep in between. The transition slope is
/// bounded by 0.9375/delta, inside the 1/delta budget.
class CutoffField {
public:
    explicit CutoffField(double delta); // requires delta in (0, 1/4)

    double delta() const { return delta_; }
    double plateau_radius() const { return plateau_; }
    double support_radius() const { return support_; }

    double operator()(const Point& x) const { return radial(x.norm()); }

    double radial(double r) const;
    double radial_d1(double r) const;
    double radial_d2(double r) const;

    Point gradient(const Point& x) const;
    /// Trace of the Hessian.
    double laplacian(const Point& x) const;

    /// Radii where the profile switches pieces (third derivative jumps).
    std::vector<double> seam_radii() const { return {plateau_, support_}; }

private:
    double delta_;
    double plateau_;
    double support_;
};

/// The piecewise-linear kernel truncation eta_tau: 0 on [0, tau/2], the ramp
/// 2t/tau - 1 on [tau/2, tau], 1 beyond tau.
class RadialCutoff {
public:
    explicit RadialCutoff(double tau); // requires tau in (0, 1/2)

    double tau() const { return tau_; }
    double operator()(double t) const;

    /// Exact integral over (a, infinity) of eta_tau(r) * r^{-1-2s} dr for
    /// a > 0, s in (0,1). Piecewise elementary antiderivatives; the s = 1/2
    /// log branch is handled by a stable expm1 form.
    double tail_integral(double a, double s) const;

    /// Same with eta_tau replaced by 1 (the untruncated kernel tail).
    static double plain_tail_integral(double a, double s);

private:
    double tau_;
};

} // namespace fraclap
