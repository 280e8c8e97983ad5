#pragma once

#include <cstdint>

#include "hartree/grid.hpp"
#include "hartree/riesz.hpp"

namespace hartree {

/// Two densities of equal mass and an interior interpolation weight.
struct DensityPair {
    RealField rho1;
    RealField rho2;
    double lambda = 0.5;

    /// Throws NegativeDensity, MassMismatch (relative 1e-10), GridMismatch or
    /// DomainError (lambda outside (0, 1)).
    void validate() const;
};

/// lambda rho1 + (1 - lambda) rho2.
RealField interpolate_density(const DensityPair& pair);

/// 1/2 int |grad sqrt(rho)|^2 + 1/2 int |x|^2 rho + kappa/4 int (I_alpha * rho) rho,
/// with sqrt taken pointwise and differentiated spectrally. Throws NegativeDensity.
double energy_of_density(const RealField& rho, const RieszOperator& riesz);

/// Separate pieces of energy_of_density without the 1/2, 1/2, 1/4 weights.
double density_gradient_term(const RealField& rho);
double density_potential_term(const RealField& rho);

/// lambda F(rho1) + (1 - lambda) F(rho2) - F(rho_lambda) for the total density energy.
double convexity_gap(const DensityPair& pair, const RieszOperator& riesz);

/// Same gap for int |grad sqrt(rho)|^2 alone.
double gradient_term_convexity(const DensityPair& pair);

/// Same gap for int |x|^2 rho alone (identically zero: the term is linear).
double potential_term_convexity(const DensityPair& pair);

/// Same gap for B(rho, rho) = int (I_alpha * rho) rho. Evaluated directly and
/// cross-checked against lambda (1 - lambda) B(rho1 - rho2, rho1 - rho2);
/// throws InvariantViolation if the two disagree beyond 1e-10 relative.
double riesz_term_convexity(const DensityPair& pair, const RieszOperator& riesz);

/// Seeded mixture of 3-6 Gaussians, centers in [-L/2, L/2]^N, widths in
/// [0.3, 1.5], plus a floor of 1e-8 times the peak, normalized to `mass`.
/// `slot` selects an independent draw for the same seed.
RealField random_density(const SpectralGrid& grid, double mass, std::uint64_t seed, unsigned slot = 0);

/// Interpolation weight derived from the same seed, uniform in [0.05, 0.95].
double random_lambda(std::uint64_t seed);

/// Trial input for the convexity suite: slots 0 and 1 of `seed`, random_lambda(seed).
DensityPair random_pair(const SpectralGrid& grid, double mass, std::uint64_t seed);

}  // namespace hartree
