#include "fraclap/presets.hpp"

#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;

/// Splits "bump(0.7)" into {"bump", 0.7}; has_param reports whether the
/// parentheses were present.
struct ParsedName {
    std::string base;
    double param = 0;
    bool has_param = false;
};

ParsedName parse_name(const std::string& name) {
    ParsedName out;
    const auto open = name.find('(');
    if (open == std::string::npos) {
        out.base = name;
        return out;
    }
    const auto close = name.find(')', open);
    if (close == std::string::npos)
        throw UnknownPreset("preset_field: unbalanced parenthesis in '" + name + "'");
    out.base = name.substr(0, open);
    try {
        out.param = std::stod(name.substr(open + 1, close - open - 1));
    } catch (const std::exception&) {
        throw UnknownPreset("preset_field: bad parameter in '" + name + "'");
    }
    out.has_param = true;
    return out;
}

ScalarField constant_field() {
    ScalarField f;
    f.eval = [](const Point&) { return 1.0; };
    f.gradient = [](const Point& x) { return Point::zero(x.dim()); };
    f.laplacian = [](const Point&) { return 0.0; };
    f.smoothness = Smoothness::analytic;
    f.decay = Decay::bounded;
    f.bound = 1.0;
    f.tail_envelope = [](double) { return 1.0; };
    f.radial = true;
    f.name = "constant";
    return f;
}

ScalarField affine_field() {
    ScalarField f;
    f.eval = [](const Point& x) { return x[0]; };
    f.gradient = [](const Point& x) { return Point::unit(x.dim(), 0); };
    f.laplacian = [](const Point&) { return 0.0; };
    f.smoothness = Smoothness::analytic;
    f.decay = Decay::weighted_l1; // integrable against the weight only for s > 1/2
    f.name = "affine";
    return f;
}

ScalarField gaussian_field(double width) {
    if (!(width > 0)) throw UnknownPreset("gaussian: width must be positive");
    const double w2 = width * width;
    ScalarField f;
    f.eval = [w2](const Point& x) { return std::exp(-kPi * x.norm2() / w2); };
    f.gradient = [w2](const Point& x) {
        Point g = x;
        g *= (-2.0 * kPi / w2) * std::exp(-kPi * x.norm2() / w2);
        return g;
    };
    f.laplacian = [w2](const Point& x) {
        const double q = x.norm2();
        return (4.0 * kPi * kPi * q / (w2 * w2) - 2.0 * kPi * x.dim() / w2) *
               std::exp(-kPi * q / w2);
    };
    f.smoothness = Smoothness::analytic;
    f.decay = Decay::weighted_l1;
    f.bound = 1.0;
    f.tail_envelope = [w2](double r) { return std::exp(-kPi * r * r / w2); };
    f.radial = true;
    f.name = "gaussian";
    return f;
}

ScalarField bump_field(double r0) {
    if (!(r0 > 0)) throw UnknownPreset("bump: radius must be positive");
    // exp(1 - 1/(1-q)) with q = |x|^2/r0^2; value 1 at the origin.
    auto profile = [r0](double q) { return q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0; };
    ScalarField f;
    f.eval = [r0, profile](const Point& x) { return profile(x.norm2() / (r0 * r0)); };
    f.gradient = [r0, profile](const Point& x) {
        const double q = x.norm2() / (r0 * r0);
        Point g = x;
        if (q >= 1.0) return Point::zero(x.dim());
        const double gp = -profile(q) / ((1.0 - q) * (1.0 - q));
        g *= gp * 2.0 / (r0 * r0);
        return g;
    };
    f.laplacian = [r0, profile](const Point& x) {
        const double q = x.norm2() / (r0 * r0);
        if (q >= 1.0) return 0.0;
        const double g0 = profile(q);
        const double om = 1.0 - q;
        const double g1 = -g0 / (om * om);
        const double g2 = g0 / (om * om * om * om) - 2.0 * g0 / (om * om * om);
        return g2 * 4.0 * x.norm2() / (r0 * r0 * r0 * r0) + g1 * 2.0 * x.dim() / (r0 * r0);
    };
    f.smoothness = Smoothness::cinf;
    f.decay = Decay::compact_support;
    f.support_radius = r0;
    f.bound = 1.0;
    f.tail_envelope = [r0, profile](double r) { return r >= r0 ? 0.0 : profile(r * r / (r0 * r0)); };
    f.radial = true;
    f.radial_kinks = {r0};
    f.name = "bump";
    return f;
}

ScalarField holder_cusp_field(double alpha) {
    if (!(alpha > 0 && alpha < 1)) throw UnknownPreset("holder-cusp: alpha must lie in (0,1)");
    ScalarField b = bump_field(1.0);
    ScalarField f;
    f.eval = [alpha, b](const Point& x) { return std::pow(std::abs(x[0]), alpha) * b(x); };
    f.smoothness = Smoothness::holder;
    f.holder_alpha = alpha;
    f.decay = Decay::compact_support;
    f.support_radius = 1.0;
    f.bound = 1.0;
    f.tail_envelope = [](double r) { return r >= 1.0 ? 0.0 : 1.0; };
    f.radial_kinks = {1.0};
    f.name = "holder-cusp";
    return f;
}

ScalarField halfspace_indicator_field() {
    ScalarField f;
    f.eval = [](const Point& x) { return x[0] > 0.0 ? 1.0 : 0.0; };
    f.smoothness = Smoothness::discontinuous;
    f.decay = Decay::bounded;
    f.bound = 1.0;
    f.tail_envelope = [](double) { return 1.0; };
    f.name = "halfspace-indicator";
    return f;
}

ScalarField getoor_field(double s) {
    if (!(s > 0 && s < 1)) throw UnknownPreset("getoor: s must lie in (0,1)");
    ScalarField f;
    f.eval = [s](const Point& x) {
        const double g = 1.0 - x.norm2();
        return g > 0.0 ? std::pow(g, s) : 0.0;
    };
    f.smoothness = Smoothness::holder;
    f.holder_alpha = s;
    f.decay = Decay::compact_support;
    f.support_radius = 1.0;
    f.bound = 1.0;
    f.tail_envelope = [](double r) { return r >= 1.0 ? 0.0 : 1.0; };
    f.radial = true;
    f.radial_kinks = {1.0};
    f.name = "getoor";
    return f;
}

} // namespace

ScalarField preset_field(const std::string& name, int dim) {
    (void)dim; // fields are dimension-generic; kept for interface symmetry
    const ParsedName p = parse_name(name);
    if (p.base == "constant") return constant_field();
    if (p.base == "affine") return affine_field();
    if (p.base == "gaussian") return gaussian_field(p.has_param ? p.param : 1.0);
    if (p.base == "bump") return bump_field(p.has_param ? p.param : 1.0);
    if (p.base == "holder-cusp") return holder_cusp_field(p.has_param ? p.param : 0.5);
    if (p.base == "halfspace-indicator") return halfspace_indicator_field();
    if (p.base == "getoor") return getoor_field(p.has_param ? p.param : 0.5);
    throw UnknownPreset("preset_field: unknown preset '" + name + "'");
}

ScalarField gaussian_bump(const Point& center, double width, double amplitude) {
    ScalarField f;
    const double w2 = width * width;
    f.eval = [center, w2, amplitude](const Point& x) {
        return amplitude * std::exp(-kPi * (x - center).norm2() / w2);
    };
    f.gradient = [center, w2, amplitude](const Point& x) {
        Point g = x - center;
        g *= amplitude * (-2.0 * kPi / w2) * std::exp(-kPi * (x - center).norm2() / w2);
        return g;
    };
    f.laplacian = [center, w2, amplitude](const Point& x) {
        const double q = (x - center).norm2();
        return amplitude * (4.0 * kPi * kPi * q / (w2 * w2) - 2.0 * kPi * x.dim() / w2) *
               std::exp(-kPi * q / w2);
    };
    f.smoothness = Smoothness::analytic;
    f.decay = Decay::weighted_l1;
    f.bound = std::abs(amplitude);
    const double cn = center.norm();
    f.tail_envelope = [cn, w2, amplitude](double r) {
        const double d = std::max(r - cn, 0.0);
        return std::abs(amplitude) * std::exp(-kPi * d * d / w2);
    };
    f.radial = cn == 0.0;
    f.name = "gaussian-bump";
    return f;
}

} // namespace fraclap
