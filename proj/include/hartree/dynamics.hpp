#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hartree/functionals.hpp"
#include "hartree/grid.hpp"
#include "hartree/ground.hpp"
#include "hartree/riesz.hpp"

namespace hartree {

struct EvolveConfig {
    double dt = 1e-3;
    int steps = 1;
    int record_stride = 1;
    /// Hartree coupling for the run, multiplied into riesz.coupling().
    double kappa = 1.0;
    double boundary_tol = 1e-10;

    void validate() const;
};

struct TraceRow {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    /// ||grad psi||^2 + ||x psi||^2, bounded by 2 E(psi_0) along the flow.
    double bound_quantity = 0.0;
    /// H-distance to the orbit {Q e^{i theta}} (NaN without a reference).
    double orbit_distance = 0.0;
    /// Unwrapped optimal phase theta*(t) (NaN without a reference).
    double phase = 0.0;
};

struct EvolutionTrace {
    std::vector<TraceRow> rows;
};

/// psi <- psi exp(-i t (|x|^2 + kappa I_alpha * |psi|^2)): the exact flow of
/// the potential part over time t, since |psi| does not change along it.
void potential_substep(ComplexField& psi, double t, const RieszOperator& riesz);

/// Strang splitting for i psi_t = -Lap psi + |x|^2 psi + kappa (I_alpha * |psi|^2) psi:
/// half potential phase, full kinetic step in Fourier space, half potential
/// phase. Each potential substep is exact because |psi| is frozen under a
/// pure phase. Reusable buffers; not thread-safe per instance.
class SplitStepPropagator {
public:
    SplitStepPropagator(const RieszOperator& riesz, double dt);

    void step(ComplexField& psi);
    double dt() const { return dt_; }

private:
    RieszOperator riesz_;
    double dt_;
    std::vector<Complex> kinetic_phase_;
    std::vector<Complex> modes_;
};

/// One Strang step (any nonzero dt, negative dt runs backward).
ComplexField strang_step(const ComplexField& psi, double dt, const RieszOperator& riesz);

struct EvolveResult {
    ComplexField psi;
    EvolutionTrace trace;
};

/// Integrates cfg.steps steps, recording a row at t = 0, every record_stride
/// steps and at the final step. Throws BoundaryContamination when |psi|
/// exceeds cfg.boundary_tol on the boundary shell (initially or mid-run),
/// and PhaseAliasing when the recorded phase moves by more than 0.9 pi
/// between rows.
EvolveResult evolve(const ComplexField& psi0, const EvolveConfig& cfg, const RieszOperator& riesz,
                    const std::optional<RealField>& q_ref = std::nullopt);

struct SolitonReport {
    double omega = 0.0;
    double max_phase_error = 0.0;
    double max_orbit_distance = 0.0;
    double energy_drift = 0.0;
    EvolutionTrace trace;
};

/// Evolves psi_0 = Q and compares the unwrapped phase with omega t.
SolitonReport soliton_phase_check(const GroundStateResult& ground, double total_time, double dt,
                                  const RieszOperator& riesz, int record_stride = 10);

struct StabilityReport {
    double eps = 0.0;
    double initial_distance = 0.0;
    double sup_distance = 0.0;
    /// sup_distance / eps; for eps = 0 it is 0 if the orbit is held to 1e-6, else infinity.
    double ratio = 0.0;
    EvolutionTrace trace;
};

/// Smooth seeded complex perturbation of unit H-norm (Gaussian-mixture
/// real and imaginary parts centered near the origin).
ComplexField stability_perturbation(const SpectralGrid& grid, std::uint64_t seed);

/// psi_0 = Q + eps w / ||w||_H, evolved to total_time; reports the supremum
/// of the orbit distance over recorded times.
StabilityReport stability_experiment(const GroundStateResult& ground, double eps, double total_time,
                                     double dt, std::uint64_t seed, const RieszOperator& riesz,
                                     int record_stride = 10);

}  // namespace hartree
