#include "hartree/grid.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace hartree {

struct SpectralGrid::Data {
    int dim = 1;
    int n = 0;
    double half_width = 0.0;
    double spacing = 0.0;
    std::size_t size = 0;
    std::vector<double> coords;
    std::vector<double> wavenumbers;
    std::vector<double> radius_sq;
    std::vector<double> wavenumber_sq;
    std::vector<std::size_t> shell;
    std::unique_ptr<FftPlan> fft;
};

int SpectralGrid::dim() const { return data_->dim; }
int SpectralGrid::n() const { return data_->n; }
double SpectralGrid::half_width() const { return data_->half_width; }
double SpectralGrid::spacing() const { return data_->spacing; }
std::size_t SpectralGrid::size() const { return data_->size; }
double SpectralGrid::cell_volume() const { return std::pow(data_->spacing, data_->dim); }
std::span<const double> SpectralGrid::coords() const { return data_->coords; }
std::span<const double> SpectralGrid::wavenumbers() const { return data_->wavenumbers; }
std::span<const double> SpectralGrid::radius_squared() const { return data_->radius_sq; }
std::span<const double> SpectralGrid::wavenumber_squared() const { return data_->wavenumber_sq; }
std::span<const std::size_t> SpectralGrid::boundary_shell() const { return data_->shell; }
const FftPlan& SpectralGrid::fft() const { return *data_->fft; }

std::array<int, 3> SpectralGrid::unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    const auto n = static_cast<std::size_t>(data_->n);
    for (int d = data_->dim - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

std::array<double, 3> SpectralGrid::point(std::size_t flat) const {
    const auto idx = unravel(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < data_->dim; ++d) x[d] = data_->coords[idx[d]];
    return x;
}

bool operator==(const SpectralGrid& a, const SpectralGrid& b) {
    if (a.data_ == b.data_) return true;
    return a.dim() == b.dim() && a.n() == b.n() && a.half_width() == b.half_width();
}

SpectralGrid build_grid(int dim, int n, double half_width) {
    if (dim < 1 || dim > 3) {
        throw ConfigError("unsupported dimension " + std::to_string(dim) + " (expected 1, 2 or 3)");
    }
    if (n < 16 || n % 2 != 0) {
        throw ConfigError("grid size n must be even and at least 16, got " + std::to_string(n));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ConfigError("half width L must be positive and finite");
    }

    auto data = std::make_shared<SpectralGrid::Data>();
    data->dim = dim;
    data->n = n;
    data->half_width = half_width;
    data->spacing = 2.0 * half_width / n;
    data->size = 1;
    for (int d = 0; d < dim; ++d) data->size *= static_cast<std::size_t>(n);

    data->coords.resize(n);
    data->wavenumbers.resize(n);
    const double k0 = std::numbers::pi / half_width;
    for (int j = 0; j < n; ++j) {
        data->coords[j] = -half_width + j * data->spacing;
        data->wavenumbers[j] = k0 * (j <= n / 2 ? j : j - n);
    }

    // Outer max(1, n/32) layers in every direction.
    const int shell_width = std::max(1, n / 32);
    data->radius_sq.resize(data->size);
    data->wavenumber_sq.resize(data->size);
    SpectralGrid view(data);
    for (std::size_t i = 0; i < data->size; ++i) {
        const auto idx = view.unravel(i);
        double r2 = 0.0, k2 = 0.0;
        bool on_shell = false;
        for (int d = 0; d < dim; ++d) {
            r2 += data->coords[idx[d]] * data->coords[idx[d]];
            k2 += data->wavenumbers[idx[d]] * data->wavenumbers[idx[d]];
            if (idx[d] < shell_width || idx[d] >= n - shell_width) on_shell = true;
        }
        data->radius_sq[i] = r2;
        data->wavenumber_sq[i] = k2;
        if (on_shell) data->shell.push_back(i);
    }
    data->fft = std::make_unique<FftPlan>(std::vector<int>(dim, n));
    return SpectralGrid(std::move(data));
}

ComplexField to_complex(const RealField& u) {
    ComplexField out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i];
    return out;
}

RealField real_part(const ComplexField& u) {
    RealField out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i].real();
    return out;
}

RealField density(const ComplexField& u) {
    RealField out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::norm(u[i]);
    return out;
}

RealField density(const RealField& u) {
    RealField out(u.grid());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
    return out;
}

std::vector<Complex> forward_transform(const ComplexField& u) {
    std::vector<Complex> modes(u.data());
    u.grid().fft().forward(modes);
    return modes;
}

ComplexField inverse_transform(const SpectralGrid& grid, std::vector<Complex> modes) {
    grid.fft().backward(modes);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& v : modes) v *= scale;
    return ComplexField(grid, std::move(modes));
}

namespace {

template <class Multiplier>
ComplexField fourier_multiply(const ComplexField& u, Multiplier&& m) {
    auto modes = forward_transform(u);
    const auto k2 = u.grid().wavenumber_squared();
    for (std::size_t i = 0; i < modes.size(); ++i) modes[i] *= m(k2[i]);
    return inverse_transform(u.grid(), std::move(modes));
}

}  // namespace

ComplexField apply_laplacian(const ComplexField& u) {
    return fourier_multiply(u, [](double k2) { return -k2; });
}

ComplexField solve_modified_helmholtz(const ComplexField& f, double tau) {
    if (!(tau > 0.0)) throw ConfigError("modified Helmholtz solve needs tau > 0");
    return fourier_multiply(f, [tau](double k2) { return 1.0 / (1.0 + tau * k2); });
}

double integrate(const RealField& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return f.grid().cell_volume() * sum;
}

Complex inner_product(const ComplexField& u, const ComplexField& v) {
    require_same_grid(u.grid(), v.grid());
    Complex sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
    return u.grid().cell_volume() * sum;
}

Complex gradient_inner_product(const ComplexField& u, const ComplexField& v) {
    require_same_grid(u.grid(), v.grid());
    const auto uh = forward_transform(u);
    const auto vh = forward_transform(v);
    const auto k2 = u.grid().wavenumber_squared();
    Complex sum = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i) sum += k2[i] * std::conj(uh[i]) * vh[i];
    // Parseval: h^N sum_x |f|^2 = (h^N / n^N) sum_k |f_hat|^2
    return u.grid().cell_volume() / static_cast<double>(u.size()) * sum;
}

double gradient_norm_sq(const ComplexField& u) {
    const auto uh = forward_transform(u);
    const auto k2 = u.grid().wavenumber_squared();
    double sum = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i) sum += k2[i] * std::norm(uh[i]);
    return u.grid().cell_volume() / static_cast<double>(u.size()) * sum;
}

double gradient_norm_sq(const RealField& u) { return gradient_norm_sq(to_complex(u)); }

double boundary_max(const ComplexField& u) {
    double m = 0.0;
    for (auto i : u.grid().boundary_shell()) m = std::max(m, std::abs(u[i]));
    return m;
}

double boundary_max(const RealField& u) {
    double m = 0.0;
    for (auto i : u.grid().boundary_shell()) m = std::max(m, std::abs(u[i]));
    return m;
}

}  // namespace hartree
