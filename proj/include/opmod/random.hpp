#pragma once

// Portable seeded randomness. The generator is SplitMix64 (64-bit state,
// Steele/Lea/Flood 2014); Gaussians use the Box-Muller transform on two
// uniforms built from the top 53 bits of successive outputs. Both algorithms
// are fixed so other implementations can reproduce generated instances.

#include <cstdint>
#include <vector>

#include "opmod/algebra.hpp"

namespace opmod {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi] (inclusive), by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
    /// Standard normal via Box-Muller; the second variate is cached.
    double gaussian() noexcept;
    /// Real and imaginary parts independent N(0, 1/2).
    Complex complex_gaussian() noexcept;

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent stream seed from (seed, stream) with one SplitMix64 step.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

Matrix gaussian_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols);
/// Isometry rows x cols (rows >= cols) from the Q factor of a complex Gaussian,
/// phase-corrected by the diagonal of R.
Matrix random_isometry(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols);

AlgebraElement random_element(SplitMix64& rng, const FdCStarAlgebra& algebra);
AmplifiedElement random_amplified(SplitMix64& rng, const FdCStarAlgebra& algebra, std::size_t rows, std::size_t cols);

}  // namespace opmod
