#include "hartree/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace hartree {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RealField gaussian_mixture(const SpectralGrid& grid, const MixtureSpec& spec, CounterRng& rng) {
    const int span = spec.max_bumps - spec.min_bumps + 1;
    const int bumps = spec.min_bumps + static_cast<int>(rng() % static_cast<std::uint64_t>(span));
    const int dim = grid.dim();

    struct Bump {
        std::array<double, 3> center{};
        double width = 1.0;
        double amplitude = 1.0;
    };
    std::vector<Bump> list(bumps);
    for (auto& b : list) {
        for (int d = 0; d < dim; ++d) b.center[d] = rng.uniform(-spec.center_radius, spec.center_radius);
        b.width = rng.uniform(spec.min_width, spec.max_width);
        b.amplitude = rng.uniform(spec.min_amplitude, spec.max_amplitude);
    }

    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.point(i);
        double v = 0.0;
        for (const auto& b : list) {
            double r2 = 0.0;
            for (int d = 0; d < dim; ++d) r2 += (x[d] - b.center[d]) * (x[d] - b.center[d]);
            v += b.amplitude * std::exp(-r2 / (2.0 * b.width * b.width));
        }
        out[i] = v;
    }
    return out;
}

}  // namespace hartree
