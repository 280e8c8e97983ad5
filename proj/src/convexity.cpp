#include "hartree/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hartree/functionals.hpp"
#include "hartree/random.hpp"

namespace hartree {

namespace {

constexpr std::uint64_t kDensityStream = 0x2000;
constexpr std::uint64_t kLambdaStream = 0x2100;

void require_nonnegative(const RealField& rho) {
    for (double v : rho.values()) {
        if (v < 0.0 || !std::isfinite(v)) throw NegativeDensity("density has a negative or non-finite sample");
    }
}

RealField pointwise_sqrt(const RealField& rho) {
    RealField out(rho.grid());
    for (std::size_t i = 0; i < rho.size(); ++i) out[i] = rho[i] > 0.0 ? std::sqrt(rho[i]) : 0.0;
    return out;
}

double pairing(const RieszOperator& op, const RealField& a, const RealField& b) {
    return riesz_pairing(op, a, b);
}

template <class F>
double gap_of(const DensityPair& pair, F&& functional) {
    const auto mixed = interpolate_density(pair);
    return pair.lambda * functional(pair.rho1) + (1.0 - pair.lambda) * functional(pair.rho2) -
           functional(mixed);
}

}  // namespace

void DensityPair::validate() const {
    require_same_grid(rho1.grid(), rho2.grid());
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("interpolation weight must lie in (0, 1)");
    require_nonnegative(rho1);
    require_nonnegative(rho2);
    const double m1 = integrate(rho1);
    const double m2 = integrate(rho2);
    if (std::abs(m1 - m2) > 1e-10 * std::max(std::abs(m1), std::abs(m2))) {
        std::ostringstream msg;
        msg << "densities have different masses " << m1 << " and " << m2;
        throw MassMismatch(msg.str());
    }
}

RealField interpolate_density(const DensityPair& pair) {
    pair.validate();
    RealField out(pair.rho1.grid());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = pair.lambda * pair.rho1[i] + (1.0 - pair.lambda) * pair.rho2[i];
    }
    return out;
}

double density_gradient_term(const RealField& rho) {
    require_nonnegative(rho);
    return gradient_norm_sq(pointwise_sqrt(rho));
}

double density_potential_term(const RealField& rho) {
    require_nonnegative(rho);
    const auto r2 = rho.grid().radius_squared();
    double sum = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) sum += r2[i] * rho[i];
    return rho.grid().cell_volume() * sum;
}

double energy_of_density(const RealField& rho, const RieszOperator& riesz) {
    require_same_grid(rho.grid(), riesz.grid());
    const double grad = density_gradient_term(rho);
    const double pot = density_potential_term(rho);
    const double b = riesz.coupling() == 0.0 ? 0.0 : riesz.coupling() * pairing(riesz, rho, rho);
    return 0.5 * grad + 0.5 * pot + 0.25 * b;
}

double convexity_gap(const DensityPair& pair, const RieszOperator& riesz) {
    return gap_of(pair, [&](const RealField& r) { return energy_of_density(r, riesz); });
}

double gradient_term_convexity(const DensityPair& pair) {
    return gap_of(pair, [](const RealField& r) { return density_gradient_term(r); });
}

double potential_term_convexity(const DensityPair& pair) {
    return gap_of(pair, [](const RealField& r) { return density_potential_term(r); });
}

double riesz_term_convexity(const DensityPair& pair, const RieszOperator& riesz) {
    const double gap = gap_of(pair, [&](const RealField& r) { return pairing(riesz, r, r); });

    auto delta = pair.rho1 - pair.rho2;
    const double identity = pair.lambda * (1.0 - pair.lambda) * pairing(riesz, delta, delta);
    const double scale = std::max({std::abs(pairing(riesz, pair.rho1, pair.rho1)),
                                   std::abs(pairing(riesz, pair.rho2, pair.rho2)),
                                   std::numeric_limits<double>::min()});
    if (std::abs(gap - identity) > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "Riesz convexity gap " << gap << " disagrees with lambda(1-lambda)B(d,d) = " << identity;
        throw InvariantViolation(msg.str());
    }
    return gap;
}

RealField random_density(const SpectralGrid& grid, double mass_value, std::uint64_t seed, unsigned slot) {
    CounterRng rng(seed, kDensityStream + slot);
    MixtureSpec spec;
    spec.center_radius = 0.5 * grid.half_width();
    auto rho = gaussian_mixture(grid, spec, rng);
    const double peak = *std::max_element(rho.values().begin(), rho.values().end());
    for (auto& v : rho.values()) v += 1e-8 * peak;
    rho *= mass_value / integrate(rho);
    return rho;
}

double random_lambda(std::uint64_t seed) {
    CounterRng rng(seed, kLambdaStream);
    return rng.uniform(0.05, 0.95);
}

DensityPair random_pair(const SpectralGrid& grid, double mass_value, std::uint64_t seed) {
    return {random_density(grid, mass_value, seed, 0), random_density(grid, mass_value, seed, 1), random_lambda(seed)};
}

}  // namespace hartree
