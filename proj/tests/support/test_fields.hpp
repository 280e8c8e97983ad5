#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hartree/grid.hpp"
#include "hartree/random.hpp"

namespace hartree::testing {

// Smooth, well-decayed random fields. Signed amplitudes unless noted.
inline RealField smooth_real(const SpectralGrid& grid, std::uint64_t seed, double radius = 1.5) {
    CounterRng rng(seed, 0x7001);
    MixtureSpec spec;
    spec.center_radius = radius;
    spec.min_width = 0.6;
    spec.max_width = 1.2;
    spec.min_amplitude = -1.0;
    spec.max_amplitude = 1.0;
    return gaussian_mixture(grid, spec, rng);
}

inline RealField smooth_positive(const SpectralGrid& grid, std::uint64_t seed, double radius = 1.5) {
    CounterRng rng(seed, 0x7002);
    MixtureSpec spec;
    spec.center_radius = radius;
    spec.min_width = 0.6;
    spec.max_width = 1.2;
    return gaussian_mixture(grid, spec, rng);
}

inline ComplexField smooth_complex(const SpectralGrid& grid, std::uint64_t seed, double radius = 1.5) {
    const auto re = smooth_real(grid, 2 * seed, radius);
    const auto im = smooth_real(grid, 2 * seed + 1, radius);
    ComplexField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex{re[i], im[i]};
    return out;
}

// Independent normal samples at every point (not smooth).
inline ComplexField noise_complex(const SpectralGrid& grid, std::uint64_t seed) {
    CounterRng rng(seed, 0x7003);
    ComplexField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Complex{rng.normal(), rng.normal()};
    return out;
}

inline RealField noise_real(const SpectralGrid& grid, std::uint64_t seed) {
    CounterRng rng(seed, 0x7004);
    RealField out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.normal();
    return out;
}

template <class T>
double max_abs(const Field<T>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

template <class T>
double max_abs_diff(const Field<T>& a, const Field<T>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

template <class T>
double rel_max_diff(const Field<T>& a, const Field<T>& b) {
    return max_abs_diff(a, b) / std::max(max_abs(b), 1e-300);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline ComplexField rotate(const ComplexField& u, double theta) {
    auto out = u;
    out *= std::polar(1.0, theta);
    return out;
}

}  // namespace hartree::testing
