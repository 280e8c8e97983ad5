#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "hartree/error.hpp"
#include "hartree/fft.hpp"

namespace hartree {

using Complex = std::complex<double>;

/// Uniform periodic tensor grid on [-L, L)^N with its Fourier wavenumbers.
///
/// A cheap-to-copy handle: coordinates, |x|^2, |k|^2 tables and FFT plans
/// live in shared immutable storage. Two grids compare equal when their
/// (dim, n, L) agree.
class SpectralGrid {
public:
    int dim() const;
    int n() const;
    double half_width() const;
    double spacing() const;
    /// Number of samples, n^dim.
    std::size_t size() const;
    /// h^dim, the quadrature weight of each sample.
    double cell_volume() const;

    /// Per-dimension coordinates x_j = -L + j h (identical in every dimension).
    std::span<const double> coords() const;
    /// Per-dimension wavenumbers in FFT order; index n/2 is the Nyquist mode.
    std::span<const double> wavenumbers() const;
    /// |x|^2 at every sample, row-major.
    std::span<const double> radius_squared() const;
    /// |k|^2 for every Fourier mode, row-major FFT order.
    std::span<const double> wavenumber_squared() const;
    /// Flat indices of the outer shell used for the boundary-decay checks.
    std::span<const std::size_t> boundary_shell() const;

    std::array<int, 3> unravel(std::size_t flat) const;
    /// Coordinates of a flat sample index (unused trailing entries are 0).
    std::array<double, 3> point(std::size_t flat) const;

    const FftPlan& fft() const;

    friend bool operator==(const SpectralGrid& a, const SpectralGrid& b);

private:
    struct Data;
    explicit SpectralGrid(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    friend SpectralGrid build_grid(int dim, int n, double half_width);

    std::shared_ptr<const Data> data_;
};

/// dim in {1,2,3}, n even and >= 16, half_width > 0; throws ConfigError otherwise.
SpectralGrid build_grid(int dim, int n, double half_width);

/// Grid-sampled function with row-major storage.
template <class T>
class Field {
public:
    explicit Field(SpectralGrid grid) : grid_(std::move(grid)), values_(grid_.size(), T{}) {}

    Field(SpectralGrid grid, std::vector<T> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw GridMismatch("field length does not match grid size");
        }
    }

    /// Samples f at every grid point.
    static Field sample(const SpectralGrid& grid,
                        const std::function<T(std::span<const double>)>& f) {
        Field out(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto x = grid.point(i);
            out.values_[i] = f(std::span<const double>(x.data(), grid.dim()));
        }
        return out;
    }

    const SpectralGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const T> values() const { return values_; }
    std::span<T> values() { return values_; }
    const std::vector<T>& data() const { return values_; }

    T& operator[](std::size_t i) { return values_[i]; }
    const T& operator[](std::size_t i) const { return values_[i]; }

    bool all_finite() const {
        for (const auto& v : values_) {
            if constexpr (std::is_same_v<T, Complex>) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            } else {
                if (!std::isfinite(v)) return false;
            }
        }
        return true;
    }

    Field& operator+=(const Field& o) {
        check_same(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check_same(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    template <class S>
    Field& operator*=(S s) {
        for (auto& v : values_) v *= s;
        return *this;
    }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    template <class S>
    friend Field operator*(S s, Field a) { return a *= s; }

private:
    void check_same(const Field& o) const {
        if (!(grid_ == o.grid_)) throw GridMismatch("fields live on different grids");
    }

    SpectralGrid grid_;
    std::vector<T> values_;
};

using RealField = Field<double>;
using ComplexField = Field<Complex>;

ComplexField to_complex(const RealField& u);
RealField real_part(const ComplexField& u);
/// Pointwise |u|^2.
RealField density(const ComplexField& u);
RealField density(const RealField& u);

inline void require_same_grid(const SpectralGrid& a, const SpectralGrid& b) {
    if (!(a == b)) throw GridMismatch("operands are defined on different grids");
}

/// Unnormalized forward DFT of the samples.
std::vector<Complex> forward_transform(const ComplexField& u);
/// Inverse of forward_transform (includes the 1/n^N factor).
ComplexField inverse_transform(const SpectralGrid& grid, std::vector<Complex> modes);

/// Spectral Laplacian: multiply each mode by -|k|^2.
ComplexField apply_laplacian(const ComplexField& u);

/// Returns (I - tau*Laplacian)^{-1} f, diagonal in Fourier space.
ComplexField solve_modified_helmholtz(const ComplexField& f, double tau);

/// Rectangle rule h^N * sum f.
double integrate(const RealField& f);

/// L^2 inner product <u, v> = integral of conj(u) v.
Complex inner_product(const ComplexField& u, const ComplexField& v);

/// Integral of conj(grad u) . grad v, evaluated by Parseval with the same
/// |k|^2 multiplier as apply_laplacian.
Complex gradient_inner_product(const ComplexField& u, const ComplexField& v);

/// Integral of |grad u|^2 (spectral).
double gradient_norm_sq(const ComplexField& u);
double gradient_norm_sq(const RealField& u);

/// Largest |u| over the boundary shell.
double boundary_max(const ComplexField& u);
double boundary_max(const RealField& u);

}  // namespace hartree
