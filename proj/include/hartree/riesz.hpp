#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hartree/grid.hpp"

namespace hartree {

/// Normalization c_{N,alpha} = Gamma((N-alpha)/2) / (Gamma(alpha/2) pi^{N/2} 2^alpha)
/// of the Riesz kernel I_alpha(x) = c |x|^{alpha-N}. Throws DomainError
/// unless 0 < alpha < dim.
double kernel_constant(int dim, double alpha);

/// Free-space convolution rho -> I_alpha * rho on a SpectralGrid.
///
/// The kernel is sampled on the zero-padded grid with 2n points per
/// dimension at signed offsets d*h, d in [-n, n), so the cyclic convolution
/// of size 2n reproduces the aperiodic convolution of box-supported data
/// exactly. The singular origin sample is replaced by the cell average of
/// the kernel over [-h/2, h/2]^N.
///
/// Immutable after construction; copies share storage.
class RieszOperator {
public:
    double alpha() const;
    double constant() const;
    const SpectralGrid& grid() const;

    /// Test hook: scalar multiplying the Hartree term in every functional
    /// that takes this operator (1 by default, 0 yields the linear
    /// harmonic oscillator). convolve() itself ignores it.
    double coupling() const { return coupling_; }
    RieszOperator with_coupling(double kappa) const;

    /// Real-space kernel samples on the padded grid, FFT order.
    std::span<const double> kernel_samples() const;
    /// DFT of kernel_samples() (real part; modes below zero clamped to 0).
    std::span<const double> kernel_hat() const;
    /// Largest |Im| of the kernel DFT before it was discarded.
    double kernel_hat_max_imag() const;
    /// Most negative real mode that was clamped (0 when none), and the peak mode.
    double clamp_magnitude() const;
    double peak_mode() const;
    double origin_value() const;

    const std::vector<int>& padded_shape() const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
    double coupling_ = 1.0;
    friend RieszOperator build_riesz(const SpectralGrid& grid, double alpha);
    friend RealField convolve(const RieszOperator& op, const RealField& rho);
};

RieszOperator build_riesz(const SpectralGrid& grid, double alpha);

/// Cell average of c|x|^{alpha-N} over [-h/2, h/2]^N: closed form for N=1,
/// for N >= 2 a pyramid split of the cell reduces it to a smooth face
/// integral evaluated by Gauss-Legendre quadrature.
double origin_cell_average(int dim, double alpha, double h);

/// (I_alpha * rho) at every grid point via the padded FFT. Linear; accepts
/// signed input.
RealField convolve(const RieszOperator& op, const RealField& rho);

/// O(n^{2N}) reference sum h^N sum_j K(x_i - x_j) rho(x_j) using the same
/// kernel table. Throws SizeError above direct_convolve_cap points.
RealField direct_convolve(const RieszOperator& op, const RealField& rho);
inline constexpr std::size_t direct_convolve_cap = 4096;

/// Riesz bilinear form B(a, b) = integral of (I_alpha * a) b.
double riesz_pairing(const RieszOperator& op, const RealField& a, const RealField& b);

}  // namespace hartree
