#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/point.hpp"

namespace fraclap {

/// Index tables for dense truncated Taylor polynomials in `dim` variables
/// up to total degree `order`. Cached per (dim, order).
class JetSpace {
public:
    static const JetSpace& get(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(multis_.size()); }

    const std::array<std::uint8_t, kMaxDim>& multi(int i) const { return multis_[i]; }
    int degree(int i) const { return degree_[i]; }

    /// Index of a multi-index, or -1 when its degree exceeds the order.
    int index_of(std::span<const int> multi) const;

    /// prod_index(i, j) = index of multi(i) + multi(j), -1 past the order.
    int prod_index(int i, int j) const { return prod_[static_cast<size_t>(i) * size() + j]; }

private:
    JetSpace(int dim, int order);
    int dim_;
    int order_;
    std::vector<std::array<std::uint8_t, kMaxDim>> multis_;
    std::vector<int> degree_;
    std::vector<int> prod_;
};

/// Truncated Taylor expansion around a base point; coefficient i stores
/// d^multi(i) f / multi(i)! . Supports the ring operations plus composition
/// with real powers, which is all the kernel derivatives need.
class Jet {
public:
    Jet(int dim, int order) : space_(&JetSpace::get(dim, order)), c_(space_->size(), 0.0) {}

    static Jet constant(int dim, int order, double v) {
        Jet j(dim, order);
        j.c_[0] = v;
        return j;
    }
    static Jet variable(int dim, int order, int axis, double x0) {
        Jet j(dim, order);
        j.c_[0] = x0;
        int m[kMaxDim] = {0};
        m[axis] = 1;
        j.c_[j.space_->index_of(std::span<const int>(m, static_cast<size_t>(dim)))] = 1.0;
        return j;
    }

    double value() const { return c_[0]; }
    double coeff(std::span<const int> multi) const {
        const int i = space_->index_of(multi);
        return i < 0 ? 0.0 : c_[i];
    }
    /// d^multi f at the base point (coefficient times multi-index factorial).
    double derivative(std::span<const int> multi) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator*(const Jet& a, const Jet& b);

    /// Composition with t -> t^p; requires a positive base value.
    Jet pow(double p) const;

private:
    const JetSpace* space_;
    std::vector<double> c_;
};

/// |x - y|^2 as a jet in x around the base point.
Jet squared_distance_jet(const Point& x, const Point& y, int order);

/// rho^2 - |x|^2 as a jet in x around the base point.
Jet boundary_gap_jet(double rho, const Point& x, int order);

} // namespace fraclap
