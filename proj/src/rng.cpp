#include "fraclap/rng.hpp"

#include <cmath>
#include <numbers>

namespace fraclap {

double normal01(std::mt19937_64& g) {
    double u1 = uniform01(g);
    while (u1 == 0.0) u1 = uniform01(g);
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_sample(double shape, std::mt19937_64& g) {
    if (shape < 1.0) {
        const double u = uniform01(g);
        return gamma_sample(shape + 1.0, g) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal01(g);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01(g);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double beta_sample(double a, double b, std::mt19937_64& g) {
    const double x = gamma_sample(a, g);
    const double y = gamma_sample(b, g);
    return x / (x + y);
}

Point sample_unit_sphere(int dim, std::mt19937_64& g) {
    for (;;) {
        Point p(dim);
        double n2 = 0;
        for (int i = 0; i < dim; ++i) {
            p[i] = normal01(g);
            n2 += p[i] * p[i];
        }
        if (n2 > 1e-300) {
            p *= 1.0 / std::sqrt(n2);
            return p;
        }
    }
}

Point sample_ball(int dim, double radius, std::mt19937_64& g) {
    Point p = sample_unit_sphere(dim, g);
    const double r = radius * std::pow(uniform01(g), 1.0 / dim);
    p *= r;
    return p;
}

} // namespace fraclap
