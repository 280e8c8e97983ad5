#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hartree/functionals.hpp"
#include "hartree/grid.hpp"
#include "hartree/riesz.hpp"

namespace hartree {

struct GroundConfig {
    double mass_target = 1.0;
    double tau = 0.05;
    /// Stop when max|u_{k+1} - u_k| / (tau sqrt(m)) falls below this, i.e.
    /// the update rate of the iterate rescaled to unit mass.
    double tol_update = 1e-10;
    int max_iter = 50000;
    double backtrack_factor = 0.5;
    double boundary_tol = 1e-10;
    /// Euler-Lagrange residual an accepted result must reach.
    double residual_tol = 1e-8;
    std::uint64_t seed = 0;
    /// Start from a log-normally perturbed Gaussian instead of the plain one.
    bool random_start = false;
    double perturbation_sigma = 0.5;

    void validate() const;
};

struct GroundStateResult {
    RealField q;
    double omega = 0.0;
    EnergyBreakdown d_m;
    double residual = 0.0;
    int iterations = 0;
    double tau_final = 0.0;
    double boundary_max = 0.0;
    int backtracks = 0;
    double final_update = 0.0;
    /// Mass removed by negative-value clipping after the first 100 iterations.
    double clipped_mass_after_warmup = 0.0;
    /// Largest E_{k+1} - E_k among accepted iterates (<= energy_roundoff relative).
    double max_energy_increase = 0.0;
    /// Energy of every accepted iterate, starting with the initial guess.
    std::vector<double> energy_trace;
};

struct StepDiagnostics {
    double clipped_mass = 0.0;
    double multiplier = 0.0;  ///< Rayleigh quotient mu = <u, H u> / <u, u>
    double shift = 0.0;       ///< stabilization beta = max V
};

/// Relative energy rise treated as roundoff when accepting a gradient-flow
/// step: 8 eps sqrt(grid points), the typical error of the energy sums.
double energy_roundoff(const SpectralGrid& grid);

/// sqrt(mass) * pi^{-N/4} exp(-|x|^2 / 2): ground mode of -Lap + |x|^2 (eigenvalue N).
RealField harmonic_ground_mode(const SpectralGrid& grid, double mass);

/// Initial iterate for solve_ground (plain or log-normally perturbed Gaussian).
RealField initial_guess(const SpectralGrid& grid, const GroundConfig& cfg);

/// One step of the normalized gradient flow.
///
/// Semi-implicit, multiplier-projected and shifted:
///   (1 + tau*beta - tau*Lap) u* = (1 + tau*beta + tau*mu - tau*V) u,
/// with V = |x|^2 + kappa I_alpha * u^2, mu the Rayleigh quotient of
/// H = -Lap + V at u, and beta = max V. The left side is applied through
/// solve_modified_helmholtz. Negative values of u* are clipped, then u* is
/// rescaled onto mass_target. Fixed points are exactly the solutions of
/// -Lap Q + omega Q + V Q = 0 with omega = -mu, and the right-hand factor is
/// positive so nonnegativity is preserved up to the Helmholtz ringing that
/// the clip removes. Throws Divergence when u* vanishes.
RealField gfdn_step(const RealField& u, const GroundConfig& cfg, const RieszOperator& riesz,
                    StepDiagnostics* diag = nullptr);

/// -(int|grad Q|^2 + int|x|^2 Q^2 + kappa int (I_alpha * Q^2) Q^2) / int Q^2.
double lagrange_multiplier(const RealField& q, const RieszOperator& riesz);

/// Minimizes the energy on the mass sphere. Energy is kept non-increasing by
/// rejecting steps and shrinking tau (never re-grown). Throws
/// MaxIterExceeded, BoundaryContamination or SolverError (residual too big).
GroundStateResult solve_ground(const GroundConfig& cfg, const SpectralGrid& grid,
                               const RieszOperator& riesz,
                               std::optional<RealField> initial = std::nullopt);

struct DCurvePoint {
    double mass = 0.0;
    double energy = 0.0;
    double omega = 0.0;
    double residual = 0.0;
};

/// Ground energies along an increasing list of masses, warm-starting each
/// solve from the previous minimizer rescaled to the next mass.
std::vector<DCurvePoint> d_curve(std::span<const double> masses, const GroundConfig& base,
                                 const SpectralGrid& grid, const RieszOperator& riesz);

struct UniquenessReport {
    std::vector<std::uint64_t> seeds;
    std::vector<double> omegas;
    std::vector<double> energies;
    double max_pairwise_l2 = 0.0;
    double omega_spread = 0.0;
    double energy_spread = 0.0;
};

/// Solves from seeded random starts; trial i uses seed cfg.seed + i.
UniquenessReport multistart_uniqueness(const GroundConfig& cfg, int trials,
                                       const SpectralGrid& grid, const RieszOperator& riesz);
UniquenessReport multistart_uniqueness(const GroundConfig& cfg, std::span<const std::uint64_t> seeds,
                                       const SpectralGrid& grid, const RieszOperator& riesz);

}  // namespace hartree
