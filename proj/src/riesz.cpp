#include "hartree/riesz.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hartree {

struct RieszOperator::Data {
    double alpha = 0.0;
    double constant = 0.0;
    SpectralGrid grid;
    std::vector<int> padded_shape;
    std::size_t padded_size = 0;
    std::vector<double> kernel;
    std::vector<double> kernel_hat;
    std::vector<std::size_t> embed;  // grid flat index -> padded flat index
    double max_imag = 0.0;
    double clamp = 0.0;
    double peak = 0.0;
    double origin = 0.0;
    std::unique_ptr<FftPlan> fft;

    explicit Data(SpectralGrid g) : grid(std::move(g)) {}
};

double kernel_constant(int dim, double alpha) {
    if (!(alpha > 0.0 && alpha < static_cast<double>(dim))) {
        std::ostringstream msg;
        msg << "Riesz exponent must satisfy 0 < alpha < N; got alpha = " << alpha << ", N = " << dim;
        throw DomainError(msg.str());
    }
    const double n = dim;
    return std::tgamma((n - alpha) / 2.0) /
           (std::tgamma(alpha / 2.0) * std::pow(std::numbers::pi, n / 2.0) * std::pow(2.0, alpha));
}

double origin_cell_average(int dim, double alpha, double h) {
    const double c = kernel_constant(dim, alpha);
    const double a = h / 2.0;
    if (dim == 1) {
        return c * std::pow(a, alpha) * 2.0 / (alpha * h);
    }
    // Split the cell into 2N pyramids with apex at the origin. The radial
    // integral along each ray is exact (1/alpha), leaving the smooth face
    // integral of |p|^{alpha-N} over p = (a, y), y in [-a, a]^{N-1}.
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const double power = (alpha - dim) / 2.0;
    double face = 0.0;
    if (dim == 2) {
        face = Rule::integrate([&](double y) { return std::pow(a * a + y * y, power); }, -a, a);
    } else {
        face = Rule::integrate(
            [&](double y) {
                return Rule::integrate([&](double z) { return std::pow(a * a + y * y + z * z, power); }, -a, a);
            },
            -a, a);
    }
    return 2.0 * dim * c * a / alpha * face / std::pow(h, dim);
}

double RieszOperator::alpha() const { return data_->alpha; }
double RieszOperator::constant() const { return data_->constant; }
const SpectralGrid& RieszOperator::grid() const { return data_->grid; }
std::span<const double> RieszOperator::kernel_samples() const { return data_->kernel; }
std::span<const double> RieszOperator::kernel_hat() const { return data_->kernel_hat; }
double RieszOperator::kernel_hat_max_imag() const { return data_->max_imag; }
double RieszOperator::clamp_magnitude() const { return data_->clamp; }
double RieszOperator::peak_mode() const { return data_->peak; }
double RieszOperator::origin_value() const { return data_->origin; }
const std::vector<int>& RieszOperator::padded_shape() const { return data_->padded_shape; }

RieszOperator RieszOperator::with_coupling(double kappa) const {
    RieszOperator copy = *this;
    copy.coupling_ = kappa;
    return copy;
}

RieszOperator build_riesz(const SpectralGrid& grid, double alpha) {
    const int dim = grid.dim();
    const int n = grid.n();
    const int m = 2 * n;
    const double h = grid.spacing();

    auto data = std::make_shared<RieszOperator::Data>(grid);
    data->alpha = alpha;
    data->constant = kernel_constant(dim, alpha);
    data->padded_shape.assign(dim, m);
    data->padded_size = 1;
    for (int d = 0; d < dim; ++d) data->padded_size *= static_cast<std::size_t>(m);
    data->origin = origin_cell_average(dim, alpha, h);

    const double c = data->constant;
    const double power = alpha - dim;
    data->kernel.resize(data->padded_size);
    for (std::size_t p = 0; p < data->padded_size; ++p) {
        std::size_t rest = p;
        double r2 = 0.0;
        for (int d = dim - 1; d >= 0; --d) {
            const int j = static_cast<int>(rest % m);
            rest /= m;
            const int offset = j < n ? j : j - m;
            r2 += static_cast<double>(offset) * offset;
        }
        data->kernel[p] = r2 == 0.0 ? data->origin : c * std::pow(h * h * r2, power / 2.0);
    }

    data->embed.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.unravel(i);
        std::size_t p = 0;
        for (int d = 0; d < dim; ++d) p = p * m + idx[d];
        data->embed[i] = p;
    }

    data->fft = std::make_unique<FftPlan>(data->padded_shape);
    std::vector<Complex> hat(data->kernel.begin(), data->kernel.end());
    data->fft->forward(hat);
    data->kernel_hat.resize(hat.size());
    for (std::size_t p = 0; p < hat.size(); ++p) {
        data->max_imag = std::max(data->max_imag, std::abs(hat[p].imag()));
        data->peak = std::max(data->peak, hat[p].real());
        double re = hat[p].real();
        if (re < 0.0) {
            data->clamp = std::max(data->clamp, -re);
            re = 0.0;
        }
        data->kernel_hat[p] = re;
    }

    RieszOperator op;
    op.data_ = std::move(data);
    return op;
}

RealField convolve(const RieszOperator& op, const RealField& rho) {
    const auto& d = *op.data_;
    require_same_grid(d.grid, rho.grid());
    std::vector<Complex> buf(d.padded_size, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rho.size(); ++i) buf[d.embed[i]] = rho[i];
    d.fft->forward(buf);
    for (std::size_t p = 0; p < buf.size(); ++p) buf[p] *= d.kernel_hat[p];
    d.fft->backward(buf);
    const double scale = d.grid.cell_volume() / static_cast<double>(d.padded_size);
    RealField out(d.grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * buf[d.embed[i]].real();
    return out;
}

RealField direct_convolve(const RieszOperator& op, const RealField& rho) {
    const auto& grid = op.grid();
    require_same_grid(grid, rho.grid());
    if (grid.size() > direct_convolve_cap) {
        throw SizeError("direct_convolve is capped at " + std::to_string(direct_convolve_cap) +
                        " grid points, got " + std::to_string(grid.size()));
    }
    const int dim = grid.dim();
    const int m = 2 * grid.n();
    const auto kernel = op.kernel_samples();
    std::vector<std::array<int, 3>> idx(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) idx[i] = grid.unravel(i);

    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            std::size_t p = 0;
            for (int d = 0; d < dim; ++d) p = p * m + static_cast<std::size_t>((idx[i][d] - idx[j][d] + m) % m);
            sum += kernel[p] * rho[j];
        }
        out[i] = grid.cell_volume() * sum;
    }
    return out;
}

double riesz_pairing(const RieszOperator& op, const RealField& a, const RealField& b) {
    require_same_grid(a.grid(), b.grid());
    const auto conv = convolve(op, a);
    double sum = 0.0;
    for (std::size_t i = 0; i < conv.size(); ++i) sum += conv[i] * b[i];
    return a.grid().cell_volume() * sum;
}

}  // namespace hartree
