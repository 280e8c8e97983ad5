#pragma once

#include "hartree/grid.hpp"
#include "hartree/riesz.hpp"

namespace hartree {

/// Parts of E(u) = 1/2 int |grad u|^2 + 1/2 int |x|^2 |u|^2 + 1/4 int (I_alpha * |u|^2) |u|^2.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double potential = 0.0;
    double hartree = 0.0;
    double total = 0.0;
};

double mass(const ComplexField& u);
double mass(const RealField& u);

/// Energy with the Hartree part scaled by riesz.coupling().
EnergyBreakdown energy(const ComplexField& u, const RieszOperator& riesz);
EnergyBreakdown energy(const RealField& u, const RieszOperator& riesz);

/// int |x|^2 |u|^2
double second_moment(const ComplexField& u);

/// Squared energy-space norm int (|grad u|^2 + |x|^2 |u|^2 + |u|^2), unit weights.
double h_norm_sq(const ComplexField& u);
/// Inner product associated with h_norm_sq, conjugate-linear in the first slot.
Complex h_inner(const ComplexField& u, const ComplexField& v);

/// Hartree potential kappa * (I_alpha * |state|^2); zero field when kappa = 0.
RealField hartree_potential(const ComplexField& state, const RieszOperator& riesz);
RealField hartree_potential(const RealField& state, const RieszOperator& riesz);

/// (-Laplacian + |x|^2 + kappa I_alpha * |state|^2) u.
ComplexField hamiltonian_apply(const ComplexField& u, const ComplexField& state,
                               const RieszOperator& riesz);

/// || -Lap Q + omega Q + |x|^2 Q + (I_alpha * |Q|^2) Q ||_2 / ||Q||_2; 0 for Q = 0.
double el_residual(const ComplexField& q, double omega, const RieszOperator& riesz);
double el_residual(const RealField& q, double omega, const RieszOperator& riesz);

/// The theta minimizing ||psi - Q e^{i theta}||_H, i.e. arg <Q, psi>_H in (-pi, pi].
/// Returns 0 when the inner product vanishes.
double optimal_phase(const ComplexField& psi, const ComplexField& q);
double optimal_phase(const ComplexField& psi, const RealField& q);

/// inf over theta of ||psi - Q e^{i theta}||_H.
double orbit_distance(const ComplexField& psi, const ComplexField& q);
double orbit_distance(const ComplexField& psi, const RealField& q);

}  // namespace hartree
