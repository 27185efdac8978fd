#pragma once

namespace fraclap {

/// Normalization constant of the fractional Laplacian,
///   s * 2^{2s} * Gamma(N/2 + s) / (pi^{N/2} * Gamma(1 - s)).
/// Requires dim >= 2 and order in (0,1).
double normalization_constant(int dim, double order);

/// Dimension, fractional order and the cached normalization constant.
/// Immutable after construction.
class FracParams {
public:
    FracParams(int dim, double order);

    int dim() const { return dim_; }
    double order() const { return order_; }
    double c_ns() const { return c_ns_; }

private:
    int dim_;
    double order_;
    double c_ns_;
};

/// Exponent bookkeeping for the Holder mapping properties of the carre du
/// champ: gamma_is is the class of I_s(f,g) for f in C^{0,alpha}, g
/// Lipschitz; beta = alpha/(alpha+1); gamma_eta = (alpha - 2s + 1) * beta
/// is the class of eta * I_s(eta, f).
struct HolderTransfer {
    double gamma_is;
    double beta;
    double gamma_eta;
};

/// Requires order in (0,1) and alpha in (order, min(2*order, 1)).
HolderTransfer holder_transfer_exponents(double alpha, double order);

} // namespace fraclap
