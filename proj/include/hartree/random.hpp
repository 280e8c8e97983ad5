#pragma once

#include <cstdint>
#include <limits>

#include "hartree/grid.hpp"

namespace hartree {

/// Counter-based generator: output k of stream s under seed is a pure hash of
/// (seed, s, k), so every consumer derives an independent stream from one
/// seed without shared state. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    /// Uniform double in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller.
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Parameters of a Gaussian-bump mixture sum_j a_j exp(-|x - c_j|^2 / (2 w_j^2)).
struct MixtureSpec {
    int min_bumps = 3;
    int max_bumps = 6;
    double center_radius = 1.0;  ///< centers uniform in [-r, r]^N
    double min_width = 0.3;
    double max_width = 1.5;
    double min_amplitude = 0.5;
    double max_amplitude = 1.5;
};

/// Samples a seeded Gaussian mixture (strictly positive, smooth).
RealField gaussian_mixture(const SpectralGrid& grid, const MixtureSpec& spec, CounterRng& rng);

}  // namespace hartree
