#pragma once

#include <cstdint>

#include "fockcs/core.hpp"

namespace fockcs {

/// SplitMix64. Same seed gives the same stream on every platform, which
/// std:: distributions do not guarantee.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Entries with real and imaginary parts uniform in [-1, 1).
Vector random_complex_vector(SplitMix64& rng, int dim);

/// Random vector supported on the first `degree + 1` coordinates.
Vector random_low_degree_vector(SplitMix64& rng, int dim, int degree);

}  // namespace fockcs
