#include "fraclap/jet.hpp"

#include <cmath>
#include <functional>

namespace fraclap {

namespace {

void enumerate_multis(int dim, int order, std::array<std::uint8_t, kMaxDim>& cur, int pos,
                      int left, std::vector<std::array<std::uint8_t, kMaxDim>>& out) {
    if (pos == dim) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        cur[pos] = static_cast<std::uint8_t>(k);
        enumerate_multis(dim, order, cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

std::uint64_t pack(const std::array<std::uint8_t, kMaxDim>& m, int dim) {
    std::uint64_t key = 0;
    for (int i = 0; i < dim; ++i) key = key * 64 + m[i];
    return key;
}

} // namespace

JetSpace::JetSpace(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1 || dim > kMaxDim) throw DomainError("JetSpace: dim out of range");
    if (order < 0 || order > 12) throw DomainError("JetSpace: order out of range");
    std::array<std::uint8_t, kMaxDim> cur{};
    enumerate_multis(dim, order, cur, 0, order, multis_);
    // Graded order so truncation by degree is a prefix property.
    std::sort(multis_.begin(), multis_.end(),
              [dim](const auto& a, const auto& b) {
                  int da = 0, db = 0;
                  for (int i = 0; i < dim; ++i) {
                      da += a[i];
                      db += b[i];
                  }
                  if (da != db) return da < db;
                  return a < b;
              });
    std::map<std::uint64_t, int> lookup;
    degree_.resize(multis_.size());
    for (size_t i = 0; i < multis_.size(); ++i) {
        int d = 0;
        for (int k = 0; k < dim; ++k) d += multis_[i][k];
        degree_[i] = d;
        lookup[pack(multis_[i], dim)] = static_cast<int>(i);
    }
    const int n = size();
    prod_.assign(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (degree_[i] + degree_[j] > order) continue;
            std::array<std::uint8_t, kMaxDim> s{};
            for (int k = 0; k < dim; ++k)
                s[k] = static_cast<std::uint8_t>(multis_[i][k] + multis_[j][k]);
            prod_[static_cast<size_t>(i) * n + j] = lookup.at(pack(s, dim));
        }
    }
}

const JetSpace& JetSpace::get(int dim, int order) {
    static std::map<std::pair<int, int>, JetSpace> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, JetSpace(dim, order)).first;
    return it->second;
}

int JetSpace::index_of(std::span<const int> multi) const {
    std::array<std::uint8_t, kMaxDim> m{};
    int deg = 0;
    for (size_t i = 0; i < multi.size() && i < static_cast<size_t>(dim_); ++i) {
        m[i] = static_cast<std::uint8_t>(multi[i]);
        deg += multi[i];
    }
    if (deg > order_) return -1;
    const std::uint64_t key = pack(m, dim_);
    // Linear probe over the graded block of that degree.
    for (size_t i = 0; i < multis_.size(); ++i)
        if (degree_[i] == deg && pack(multis_[i], dim_) == key) return static_cast<int>(i);
    return -1;
}

double Jet::derivative(std::span<const int> multi) const {
    const int i = space_->index_of(multi);
    if (i < 0) throw DomainError("Jet::derivative: multi-index exceeds jet order");
    double fact = 1.0;
    for (size_t k = 0; k < multi.size(); ++k)
        for (int j = 2; j <= multi[k]; ++j) fact *= j;
    return c_[i] * fact;
}

Jet& Jet::operator+=(const Jet& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& x : c_) x *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet out(a.space_->dim(), a.space_->order());
    const int n = a.space_->size();
    for (int i = 0; i < n; ++i) {
        if (a.c_[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            const int k = a.space_->prod_index(i, j);
            if (k >= 0) out.c_[k] += a.c_[i] * b.c_[j];
        }
    }
    return out;
}

Jet Jet::pow(double p) const {
    const double t0 = c_[0];
    if (!(t0 > 0.0)) throw DomainError("Jet::pow: base value must be positive");
    const int K = space_->order();
    Jet delta = *this;
    delta.c_[0] = 0.0;

    // f(t0 + d) = sum_k binom(p,k) t0^{p-k} d^k, truncated; d is nilpotent.
    Jet out = Jet::constant(space_->dim(), K, std::pow(t0, p));
    Jet dk = Jet::constant(space_->dim(), K, 1.0);
    double coef = 1.0;
    for (int k = 1; k <= K; ++k) {
        dk = dk * delta;
        coef *= (p - (k - 1)) / k;
        Jet term = dk;
        term *= coef * std::pow(t0, p - k);
        out += term;
    }
    return out;
}

Jet squared_distance_jet(const Point& x, const Point& y, int order) {
    const int dim = x.dim();
    Jet q(dim, order);
    for (int i = 0; i < dim; ++i) {
        Jet v = Jet::variable(dim, order, i, x[i]) - Jet::constant(dim, order, y[i]);
        q += v * v;
    }
    return q;
}

Jet boundary_gap_jet(double rho, const Point& x, int order) {
    const int dim = x.dim();
    Jet q = Jet::constant(dim, order, rho * rho);
    for (int i = 0; i < dim; ++i) {
        Jet v = Jet::variable(dim, order, i, x[i]);
        q -= v * v;
    }
    return q;
}

} // namespace fraclap
