#include "fraclap/gamma.hpp"

#include <cmath>
#include <numbers>

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

// Classical Lanczos coefficients for g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series A_g(z) for z >= 0 (argument already shifted by -1).
double lanczos_sum(double z) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    return a;
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    if (x < 0.5) {
        // Reflection keeps the series argument in its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) *
           lanczos_sum(z);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    if (x < 0.5) {
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(z));
}

double unit_sphere_area(int dim) {
    if (dim < 1) throw DomainError("unit_sphere_area: dim must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / gamma_fn(0.5 * dim);
}

double unit_ball_volume(int dim) {
    return unit_sphere_area(dim) / dim;
}

} // namespace fraclap
