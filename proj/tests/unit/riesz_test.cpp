#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hartree/convexity.hpp"
#include "hartree/error.hpp"
#include "hartree/riesz.hpp"
#include "test_fields.hpp"

using namespace hartree;
using namespace hartree::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Cell average of c|x|^{alpha-N} over [-h/2, h/2]^N from self-similarity:
// the integral over the centred cube of side s scales as s^alpha, so the
// unit cube minus the half-size centred cube carries a fraction 1 - 2^{-alpha}
// of the total. That shell is split into 3^N - 1 boxes that stay away from
// the origin, where a tensor Gauss rule is accurate.
double cell_average_oracle(int dim, double alpha, double h) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double edges[4] = {-0.5, -0.25, 0.25, 0.5};
    const double power = 0.5 * (alpha - dim);
    double shell = 0.0;
    const int boxes = dim == 2 ? 9 : 27;
    for (int b = 0; b < boxes; ++b) {
        const int i = b % 3, j = (b / 3) % 3, k = b / 9;
        if (i == 1 && j == 1 && (dim == 2 || k == 1)) continue;
        if (dim == 2) {
            shell += Rule::integrate(
                [&](double x) {
                    return Rule::integrate([&](double y) { return std::pow(x * x + y * y, power); }, edges[j], edges[j + 1]);
                },
                edges[i], edges[i + 1]);
        } else {
            shell += Rule::integrate(
                [&](double x) {
                    return Rule::integrate(
                        [&](double y) {
                            return Rule::integrate([&](double z) { return std::pow(x * x + y * y + z * z, power); },
                                                   edges[k], edges[k + 1]);
                        },
                        edges[j], edges[j + 1]);
                },
                edges[i], edges[i + 1]);
        }
    }
    const double unit_cube = shell / (1.0 - std::pow(2.0, -alpha));
    // Integral over the cube of side h is h^alpha times the unit one.
    return kernel_constant(dim, alpha) * std::pow(h, alpha) * unit_cube / std::pow(h, dim);
}

RealField discrete_delta(const SpectralGrid& g) {
    RealField rho(g);
    std::size_t flat = 0;
    for (int d = 0; d < g.dim(); ++d) flat = flat * g.n() + g.n() / 2;
    rho[flat] = 1.0 / g.cell_volume();
    return rho;
}

// Kernel sample at integer offset (d0, d1, d2) on the padded FFT-ordered table.
double kernel_at(const RieszOperator& op, std::array<int, 3> offset) {
    const auto& shape = op.padded_shape();
    std::size_t flat = 0;
    for (std::size_t d = 0; d < shape.size(); ++d) {
        const int m = shape[d];
        flat = flat * m + static_cast<std::size_t>((offset[d] % m + m) % m);
    }
    return op.kernel_samples()[flat];
}

}  // namespace

TEST_SUITE("riesz") {

TEST_CASE("kernel constants match closed forms") {
    CHECK(rel_diff(kernel_constant(1, 0.5), 1.0 / std::sqrt(2.0 * kPi)) < 1e-13);
    CHECK(rel_diff(kernel_constant(3, 2.0), 1.0 / (4.0 * kPi)) < 1e-13);
    CHECK(rel_diff(kernel_constant(2, 1.0), 1.0 / (2.0 * kPi)) < 1e-13);
    CHECK(rel_diff(kernel_constant(3, 1.0), 1.0 / (2.0 * kPi * kPi)) < 1e-13);
    for (int dim : {1, 2, 3}) {
        for (double alpha : {0.1, 0.5, 0.9}) CHECK(kernel_constant(dim, alpha * dim) > 0.0);
    }
}

TEST_CASE("exponents outside (0, N) are rejected") {
    CHECK_THROWS_AS(kernel_constant(1, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_constant(2, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_constant(3, -0.5), DomainError);
    CHECK_THROWS_AS(kernel_constant(2, 2.5), DomainError);
    const auto g = build_grid(1, 16, 2.0);
    CHECK_THROWS_AS(build_riesz(g, 1.5), DomainError);
    try {
        build_riesz(g, 1.5);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("0 < alpha < N") != std::string::npos);
    }
}

TEST_CASE("1D origin cell average matches quadrature") {
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (double h : {1.0, 0.0625, 0.3}) {
            const double c = kernel_constant(1, alpha);
            const double integral =
                integrator.integrate([&](double x) { return c * std::pow(x, alpha - 1.0); }, 0.0, 0.5 * h);
            CHECK(rel_diff(origin_cell_average(1, alpha, h), 2.0 * integral / h) < 1e-10);
        }
    }
}

TEST_CASE("multi-dimensional origin cell average") {
    for (double alpha : {0.5, 1.0, 1.5}) {
        for (double h : {0.25, 1.0}) CHECK(rel_diff(origin_cell_average(2, alpha, h), cell_average_oracle(2, alpha, h)) < 1e-10);
    }
    for (double alpha : {0.5, 2.0}) {
        CHECK(rel_diff(origin_cell_average(3, alpha, 0.5), cell_average_oracle(3, alpha, 0.5)) < 1e-8);
    }
}

TEST_CASE("kernel samples are positive, even and exact at |x| = 1") {
    const auto g = build_grid(1, 256, 8.0);
    const auto op = build_riesz(g, 0.5);
    CHECK(op.padded_shape() == std::vector<int>{512});
    for (double v : op.kernel_samples()) REQUIRE(v > 0.0);
    CHECK(kernel_at(op, {16, 0, 0}) == op.constant());
    CHECK(kernel_at(op, {-16, 0, 0}) == op.constant());
    for (int d = 1; d < 256; ++d) REQUIRE(kernel_at(op, {d, 0, 0}) == kernel_at(op, {-d, 0, 0}));
    CHECK(kernel_at(op, {0, 0, 0}) == op.origin_value());
    CHECK(op.kernel_hat_max_imag() < 1e-12);

    const auto g2 = build_grid(2, 32, 8.0);
    const auto op2 = build_riesz(g2, 1.0);
    CHECK(kernel_at(op2, {2, 0, 0}) == op2.constant());
    CHECK(kernel_at(op2, {0, -2, 0}) == op2.constant());
    CHECK(kernel_at(op2, {3, -5, 0}) == kernel_at(op2, {-3, 5, 0}));
    CHECK(op2.kernel_hat_max_imag() < 1e-12);
}

TEST_CASE("positive-semidefinite clamp stays negligible") {
    struct Case {
        int dim, n;
        double L, alpha;
    };
    for (const auto& c : {Case{1, 256, 8.0, 0.5}, Case{1, 64, 8.0, 0.9}, Case{2, 32, 8.0, 0.5},
                          Case{2, 64, 8.0, 1.0}, Case{3, 16, 4.0, 2.0}}) {
        const auto op = build_riesz(build_grid(c.dim, c.n, c.L), c.alpha);
        CHECK(op.clamp_magnitude() <= 1e-8 * op.peak_mode());
        for (double v : op.kernel_hat()) REQUIRE(v >= 0.0);
    }
}

TEST_CASE("convolution of zero and of a discrete delta") {
    for (int dim : {1, 2}) {
        const auto g = build_grid(dim, dim == 1 ? 64 : 32, 4.0);
        const auto op = build_riesz(g, 0.5);
        CHECK(max_abs(convolve(op, RealField(g))) == 0.0);
        CHECK(max_abs(direct_convolve(op, RealField(g))) == 0.0);

        const auto out = convolve(op, discrete_delta(g));
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto idx = g.unravel(i);
            std::array<int, 3> offset{};
            for (int d = 0; d < dim; ++d) offset[d] = idx[d] - g.n() / 2;
            const double k = kernel_at(op, offset);
            err = std::max(err, std::abs(out[i] - k) / k);
        }
        CHECK(err < 1e-12);
    }
}

TEST_CASE("FFT convolution equals the direct sum") {
    for (int dim : {1, 2}) {
        const auto g = build_grid(dim, dim == 1 ? 64 : 32, 8.0);
        const auto op = build_riesz(g, dim == 1 ? 0.5 : 1.2);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto rho = random_density(g, 1.0, seed);
            CHECK(rel_max_diff(convolve(op, rho), direct_convolve(op, rho)) < 1e-12);
        }
        // Signed input as well.
        const auto sigma = noise_real(g, 5);
        CHECK(rel_max_diff(convolve(op, sigma), direct_convolve(op, sigma)) < 1e-12);
    }
}

TEST_CASE("direct sum preserves parity and enforces its size cap") {
    const auto g = build_grid(1, 64, 6.0);
    const auto op = build_riesz(g, 0.5);
    // Even about x = 0 on the grid (index n/2).
    const auto rho = RealField::sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0]) * (1.0 + x[0] * x[0]); });
    const auto out = direct_convolve(op, rho);
    for (int j = 1; j < 32; ++j) CHECK(out[32 + j] == doctest::Approx(out[32 - j]).epsilon(1e-13));

    const auto big = build_grid(2, 128, 6.0);
    CHECK_THROWS_AS(direct_convolve(build_riesz(big, 0.5), RealField(big)), SizeError);
}

TEST_CASE("grids must match") {
    const auto op = build_riesz(build_grid(1, 64, 6.0), 0.5);
    CHECK_THROWS_AS(convolve(op, RealField(build_grid(1, 64, 5.0))), GridMismatch);
    CHECK_THROWS_AS(direct_convolve(op, RealField(build_grid(1, 32, 6.0))), GridMismatch);
}

TEST_CASE("convolution of a positive density is positive everywhere") {
    const auto g = build_grid(2, 32, 6.0);
    const auto op = build_riesz(g, 1.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto out = convolve(op, random_density(g, 1.0, seed));
        for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i] > 0.0);
    }
}

TEST_CASE("bilinear form is symmetric and positive semidefinite") {
    for (int dim : {1, 2}) {
        const auto g = build_grid(dim, dim == 1 ? 256 : 32, 8.0);
        const auto op = build_riesz(g, 0.5);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto a = random_density(g, 1.0, seed, 0);
            const auto b = random_density(g, 1.0, seed, 1);
            const double ab = riesz_pairing(op, a, b);
            const double ba = riesz_pairing(op, b, a);
            CHECK(std::abs(ab - ba) <= 1e-10 * std::abs(ab));
            const auto sigma = noise_real(g, 40 + seed);
            CHECK(riesz_pairing(op, sigma, sigma) >= 0.0);
            auto delta = a;
            delta -= b;
            CHECK(riesz_pairing(op, delta, delta) >= 0.0);
        }
    }
}

TEST_CASE("convolution of a Gaussian converges to the continuum value") {
    // (I_alpha * e^{-y^2})(0) = c integral |y|^{-1/2} e^{-y^2} dy = c Gamma(1/4) for N = 1, alpha = 1/2.
    std::vector<double> errors;
    for (int n : {128, 256, 512, 1024}) {
        const auto g = build_grid(1, n, 8.0);
        const auto op = build_riesz(g, 0.5);
        const auto rho = RealField::sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
        const double exact = op.constant() * std::tgamma(0.25);
        errors.push_back(rel_diff(convolve(op, rho)[n / 2], exact));
        MESSAGE("n = " << n << " relative error " << errors.back());
    }
    CHECK(errors.back() < 1e-2);
    // Point samples of the singular kernel next to the averaged origin cell
    // make the error O(h^alpha): halving h divides it by 2^{1/2}.
    for (std::size_t i = 1; i < errors.size(); ++i) {
        CHECK(errors[i - 1] / errors[i] == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));
    }
}

}
