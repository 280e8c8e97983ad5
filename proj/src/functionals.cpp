#include "hartree/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hartree {

double mass(const ComplexField& u) { return integrate(density(u)); }
double mass(const RealField& u) { return integrate(density(u)); }

double second_moment(const ComplexField& u) {
    const auto r2 = u.grid().radius_squared();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += r2[i] * std::norm(u[i]);
    return u.grid().cell_volume() * sum;
}

RealField hartree_potential(const RealField& state, const RieszOperator& riesz) {
    require_same_grid(state.grid(), riesz.grid());
    if (riesz.coupling() == 0.0) return RealField(state.grid());
    auto v = convolve(riesz, density(state));
    v *= riesz.coupling();
    return v;
}

RealField hartree_potential(const ComplexField& state, const RieszOperator& riesz) {
    require_same_grid(state.grid(), riesz.grid());
    if (riesz.coupling() == 0.0) return RealField(state.grid());
    auto v = convolve(riesz, density(state));
    v *= riesz.coupling();
    return v;
}

EnergyBreakdown energy(const ComplexField& u, const RieszOperator& riesz) {
    require_same_grid(u.grid(), riesz.grid());
    EnergyBreakdown e;
    e.kinetic = 0.5 * gradient_norm_sq(u);
    e.potential = 0.5 * second_moment(u);
    if (riesz.coupling() != 0.0) {
        const auto rho = density(u);
        const auto v = convolve(riesz, rho);
        double sum = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) sum += v[i] * rho[i];
        e.hartree = 0.25 * riesz.coupling() * u.grid().cell_volume() * sum;
    }
    e.total = e.kinetic + e.potential + e.hartree;
    return e;
}

EnergyBreakdown energy(const RealField& u, const RieszOperator& riesz) {
    return energy(to_complex(u), riesz);
}

double h_norm_sq(const ComplexField& u) {
    return gradient_norm_sq(u) + second_moment(u) + mass(u);
}

Complex h_inner(const ComplexField& u, const ComplexField& v) {
    require_same_grid(u.grid(), v.grid());
    const auto r2 = u.grid().radius_squared();
    Complex local = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) local += (r2[i] + 1.0) * std::conj(u[i]) * v[i];
    return gradient_inner_product(u, v) + u.grid().cell_volume() * local;
}

ComplexField hamiltonian_apply(const ComplexField& u, const ComplexField& state,
                               const RieszOperator& riesz) {
    require_same_grid(u.grid(), state.grid());
    auto out = apply_laplacian(u);
    out *= -1.0;
    const auto r2 = u.grid().radius_squared();
    const auto vh = hartree_potential(state, riesz);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] += (r2[i] + vh[i]) * u[i];
    return out;
}

double el_residual(const ComplexField& q, double omega, const RieszOperator& riesz) {
    const double norm = std::sqrt(mass(q));
    if (norm == 0.0) return 0.0;
    auto r = hamiltonian_apply(q, q, riesz);
    for (std::size_t i = 0; i < q.size(); ++i) r[i] += omega * q[i];
    return std::sqrt(mass(r)) / norm;
}

double el_residual(const RealField& q, double omega, const RieszOperator& riesz) {
    return el_residual(to_complex(q), omega, riesz);
}

double optimal_phase(const ComplexField& psi, const ComplexField& q) {
    // ||psi - e^{i t} Q||^2 = const - 2 Re(e^{-i t} <Q, psi>), minimized at t = arg <Q, psi>.
    const Complex overlap = h_inner(q, psi);
    if (overlap == Complex{0.0, 0.0}) return 0.0;
    double theta = std::arg(overlap);
    if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
    return theta;
}

double optimal_phase(const ComplexField& psi, const RealField& q) {
    return optimal_phase(psi, to_complex(q));
}

double orbit_distance(const ComplexField& psi, const ComplexField& q) {
    const Complex rot = std::polar(1.0, optimal_phase(psi, q));
    auto diff = psi;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= rot * q[i];
    return std::sqrt(std::max(0.0, h_norm_sq(diff)));
}

double orbit_distance(const ComplexField& psi, const RealField& q) {
    return orbit_distance(psi, to_complex(q));
}

}  // namespace hartree
