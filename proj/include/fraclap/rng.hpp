#pragma once

#include <cstdint>
#include <random>

#include "fraclap/point.hpp"

namespace fraclap {

/// SplitMix64 step; used to derive independent stream seeds from a base
/// seed and a stream index, so batch k of a Monte-Carlo run draws the same
/// numbers whether batches run serially or in parallel.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

// Portable distributions: std:: distribution objects are not guaranteed to
// produce identical sequences across standard libraries, so everything
// below maps engine output through fixed arithmetic only.

/// Uniform in [0,1).
inline double uniform01(std::mt19937_64& g) {
    return (g() >> 11) * 0x1.0p-53;
}

/// Standard normal, Box-Muller (no cached second value, fixed call count).
double normal01(std::mt19937_64& g);

/// Gamma(shape, 1), Marsaglia-Tsang with the shape<1 boost.
double gamma_sample(double shape, std::mt19937_64& g);

/// Beta(a, b) through two Gamma draws.
double beta_sample(double a, double b, std::mt19937_64& g);

/// Uniform direction on S^{dim-1}.
Point sample_unit_sphere(int dim, std::mt19937_64& g);

/// Uniform point of the ball of the given radius.
Point sample_ball(int dim, double radius, std::mt19937_64& g);

} // namespace fraclap
