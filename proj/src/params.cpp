#include "fraclap/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fraclap/errors.hpp"
#include "fraclap/gamma.hpp"

namespace fraclap {

double normalization_constant(int dim, double order) {
    if (dim < 2) throw DomainError("normalization_constant: dim must be >= 2");
    if (!(order > 0.0 && order < 1.0))
        throw DomainError("normalization_constant: order must lie in (0,1)");
    const double s = order;
    return s * std::pow(2.0, 2.0 * s) * gamma_fn(0.5 * dim + s) /
           (std::pow(std::numbers::pi, 0.5 * dim) * gamma_fn(1.0 - s));
}

FracParams::FracParams(int dim, double order)
    : dim_(dim), order_(order), c_ns_(normalization_constant(dim, order)) {}

HolderTransfer holder_transfer_exponents(double alpha, double order) {
    const double s = order;
    if (!(s > 0.0 && s < 1.0))
        throw DomainError("holder_transfer_exponents: order must lie in (0,1)");
    if (!(alpha > s && alpha < std::min(2.0 * s, 1.0)))
        throw DomainError("holder_transfer_exponents: alpha must lie in (s, min(2s,1))");
    HolderTransfer t;
    t.gamma_is = (s <= 0.5) ? 2.0 * alpha - 2.0 * s : alpha - 2.0 * s + 1.0;
    t.beta = alpha / (alpha + 1.0);
    t.gamma_eta = (alpha - 2.0 * s + 1.0) * t.beta;
    return t;
}

} // namespace fraclap
