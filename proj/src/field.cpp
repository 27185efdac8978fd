#include "fraclap/field.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap {

namespace {

std::vector<double> merge_kinks(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

ScalarField field_sum(double a, const ScalarField& f, double b, const ScalarField& g) {
    ScalarField out;
    out.eval = [a, fe = f.eval, b, ge = g.eval](const Point& x) {
        return a * fe(x) + b * ge(x);
    };
    out.smoothness = min_smoothness(f.smoothness, g.smoothness);
    out.holder_alpha = std::min(f.holder_exponent(), g.holder_exponent());

    if (f.decay == Decay::compact_support && g.decay == Decay::compact_support) {
        out.decay = Decay::compact_support;
        out.support_radius = std::max(f.support_radius, g.support_radius);
    } else if (f.decay == Decay::bounded || g.decay == Decay::bounded) {
        out.decay = Decay::bounded;
    } else {
        out.decay = Decay::weighted_l1;
    }
    if (std::isfinite(f.bound) && std::isfinite(g.bound))
        out.bound = std::abs(a) * f.bound + std::abs(b) * g.bound;
    if (f.tail_envelope && g.tail_envelope) {
        out.tail_envelope = [a, ef = f.tail_envelope, b, eg = g.tail_envelope](double r) {
            return std::abs(a) * ef(r) + std::abs(b) * eg(r);
        };
    }
    if (f.gradient && g.gradient) {
        out.gradient = [a, gf = f.gradient, b, gg = g.gradient](const Point& x) {
            Point p = gf(x);
            p *= a;
            Point q = gg(x);
            q *= b;
            return p + q;
        };
    }
    if (f.laplacian && g.laplacian) {
        out.laplacian = [a, lf = f.laplacian, b, lg = g.laplacian](const Point& x) {
            return a * lf(x) + b * lg(x);
        };
    }
    out.radial = f.radial && g.radial;
    out.radial_kinks = merge_kinks(f.radial_kinks, g.radial_kinks);
    out.name = f.name + "+" + g.name;
    return out;
}

ScalarField field_scale(double c, const ScalarField& f) {
    ScalarField out = f;
    out.eval = [c, fe = f.eval](const Point& x) { return c * fe(x); };
    if (std::isfinite(f.bound)) out.bound = std::abs(c) * f.bound;
    if (f.tail_envelope)
        out.tail_envelope = [c, e = f.tail_envelope](double r) { return std::abs(c) * e(r); };
    if (f.gradient) {
        out.gradient = [c, g = f.gradient](const Point& x) {
            Point p = g(x);
            p *= c;
            return p;
        };
    }
    if (f.laplacian)
        out.laplacian = [c, l = f.laplacian](const Point& x) { return c * l(x); };
    return out;
}

ScalarField field_product(const ScalarField& f, const ScalarField& g) {
    ScalarField out;
    out.eval = [fe = f.eval, ge = g.eval](const Point& x) { return fe(x) * ge(x); };
    out.smoothness = min_smoothness(f.smoothness, g.smoothness);
    out.holder_alpha = std::min(f.holder_exponent(), g.holder_exponent());

    if (f.decay == Decay::compact_support || g.decay == Decay::compact_support) {
        out.decay = Decay::compact_support;
        out.support_radius = std::min(f.support_radius, g.support_radius);
    } else if (f.decay == Decay::weighted_l1 || g.decay == Decay::weighted_l1) {
        out.decay = Decay::weighted_l1;
    } else {
        out.decay = Decay::bounded;
    }
    if (std::isfinite(f.bound) && std::isfinite(g.bound)) out.bound = f.bound * g.bound;
    if (f.tail_envelope && g.tail_envelope) {
        out.tail_envelope = [ef = f.tail_envelope, eg = g.tail_envelope](double r) {
            return ef(r) * eg(r);
        };
    }
    if (f.has_derivatives() && g.has_derivatives()) {
        out.gradient = [f, g](const Point& x) {
            Point p = g.gradient(x);
            p *= f.eval(x);
            Point q = f.gradient(x);
            q *= g.eval(x);
            return p + q;
        };
        out.laplacian = [f, g](const Point& x) {
            return f.eval(x) * g.laplacian(x) + g.eval(x) * f.laplacian(x) +
                   2.0 * f.gradient(x).dot(g.gradient(x));
        };
    }
    out.radial = f.radial && g.radial;
    out.radial_kinks = merge_kinks(f.radial_kinks, g.radial_kinks);
    out.name = f.name + "*" + g.name;
    return out;
}

ScalarField cutoff_as_field(const CutoffField& eta) {
    ScalarField out;
    out.eval = [eta](const Point& x) { return eta(x); };
    out.gradient = [eta](const Point& x) { return eta.gradient(x); };
    out.laplacian = [eta](const Point& x) { return eta.laplacian(x); };
    out.smoothness = Smoothness::c2;
    out.decay = Decay::compact_support;
    out.support_radius = eta.support_radius();
    out.bound = 1.0;
    out.tail_envelope = [r0 = eta.support_radius()](double r) { return r < r0 ? 1.0 : 0.0; };
    out.radial = true;
    out.radial_kinks = eta.seam_radii();
    out.name = "eta";
    return out;
}

} // namespace fraclap
