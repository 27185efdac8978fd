#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>

namespace fraclap {

/// Largest spatial dimension the toolkit supports.
inline constexpr int kMaxDim = 8;

/// A point of R^N with inline storage, N <= kMaxDim. Value semantics, no
/// heap traffic in quadrature and sampling loops.
class Point {
public:
    Point() = default;
    explicit Point(int dim) : dim_(dim) { assert(dim >= 0 && dim <= kMaxDim); }
    Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
        assert(dim_ <= kMaxDim);
        int i = 0;
        for (double x : xs) v_[i++] = x;
    }

    static Point zero(int dim) { return Point(dim); }
    static Point unit(int dim, int axis) {
        Point p(dim);
        p[axis] = 1.0;
        return p;
    }

    int dim() const { return dim_; }
    double& operator[](int i) { return v_[i]; }
    double operator[](int i) const { return v_[i]; }

    Point& operator+=(const Point& o) {
        for (int i = 0; i < dim_; ++i) v_[i] += o.v_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        for (int i = 0; i < dim_; ++i) v_[i] -= o.v_[i];
        return *this;
    }
    Point& operator*=(double c) {
        for (int i = 0; i < dim_; ++i) v_[i] *= c;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(double c, Point a) { return a *= c; }
    friend Point operator*(Point a, double c) { return a *= c; }

    double dot(const Point& o) const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += v_[i] * o.v_[i];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

private:
    std::array<double, kMaxDim> v_{};
    int dim_ = 0;
};

/// x + r*w without temporaries beyond the return value.
inline Point axpy(const Point& x, double r, const Point& w) {
    Point p = x;
    for (int i = 0; i < x.dim(); ++i) p[i] += r * w[i];
    return p;
}

} // namespace fraclap
