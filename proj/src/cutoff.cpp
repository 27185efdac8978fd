#include "fraclap/cutoff.hpp"

#include <algorithm>
#include <cmath>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

// Quintic smoothstep and derivatives on [0,1]; C^2 at both ends.
double smoothstep5(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep5_d1(double t) {
    const double u = t * (1.0 - t);
    return 30.0 * u * u;
}
double smoothstep5_d2(double t) { return 60.0 * t * (2.0 * t - 1.0) * (t - 1.0); }

// Antiderivative of r^{-2s}, normalized so jumps near s = 1/2 stay stable:
// (r^{1-2s} - 1)/(1 - 2s) -> log r as s -> 1/2.
double pow_antideriv(double r, double s) {
    const double e = 1.0 - 2.0 * s;
    const double le = e * std::log(r);
    if (std::abs(e) < 1e-9) return std::log(r) * (1.0 + 0.5 * le);
    return std::expm1(le) / e;
}

} // namespace

CutoffField::CutoffField(double delta) : delta_(delta) {
    if (!(delta > 0.0 && delta < 0.25))
        throw DomainError("CutoffField: delta must lie in (0, 1/4)");
    plateau_ = 1.0 - 4.0 * delta;
    support_ = 1.0 - 2.0 * delta;
}

double CutoffField::radial(double r) const {
    if (r <= plateau_) return 1.0;
    if (r >= support_) return 0.0;
    return 1.0 - smoothstep5((r - plateau_) / (2.0 * delta_));
}

double CutoffField::radial_d1(double r) const {
    if (r <= plateau_ || r >= support_) return 0.0;
    return -smoothstep5_d1((r - plateau_) / (2.0 * delta_)) / (2.0 * delta_);
}

double CutoffField::radial_d2(double r) const {
    if (r <= plateau_ || r >= support_) return 0.0;
    const double w = 2.0 * delta_;
    return -smoothstep5_d2((r - plateau_) / w) / (w * w);
}

Point CutoffField::gradient(const Point& x) const {
    const double r = x.norm();
    Point g(x.dim());
    if (r <= plateau_ || r >= support_ || r == 0.0) return g;
    const double d1 = radial_d1(r);
    for (int i = 0; i < x.dim(); ++i) g[i] = d1 * x[i] / r;
    return g;
}

double CutoffField::laplacian(const Point& x) const {
    const double r = x.norm();
    if (r <= plateau_ || r >= support_ || r == 0.0) return 0.0;
    return radial_d2(r) + (x.dim() - 1) * radial_d1(r) / r;
}

RadialCutoff::RadialCutoff(double tau) : tau_(tau) {
    if (!(tau > 0.0 && tau < 0.5))
        throw DomainError("RadialCutoff: tau must lie in (0, 1/2)");
}

double RadialCutoff::operator()(double t) const {
    if (t <= 0.5 * tau_) return 0.0;
    if (t >= tau_) return 1.0;
    return 2.0 * t / tau_ - 1.0;
}

double RadialCutoff::plain_tail_integral(double a, double s) {
    return std::pow(a, -2.0 * s) / (2.0 * s);
}

double RadialCutoff::tail_integral(double a, double s) const {
    if (a >= tau_) return plain_tail_integral(a, s);
    const double a0 = std::max(a, 0.5 * tau_);
    // Ramp piece on [a0, tau] plus the untruncated tail beyond tau.
    const double ramp = (2.0 / tau_) * (pow_antideriv(tau_, s) - pow_antideriv(a0, s)) +
                        (std::pow(tau_, -2.0 * s) - std::pow(a0, -2.0 * s)) / (2.0 * s);
    return ramp + plain_tail_integral(tau_, s);
}

} // namespace fraclap
