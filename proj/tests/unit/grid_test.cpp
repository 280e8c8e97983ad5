#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hartree/error.hpp"
#include "hartree/grid.hpp"
#include "test_fields.hpp"

using namespace hartree;
using namespace hartree::testing;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexField plane_wave(const SpectralGrid& grid, std::array<int, 3> mode) {
    return ComplexField::sample(grid, [&](std::span<const double> x) {
        double phase = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) phase += kPi / grid.half_width() * mode[d] * x[d];
        return std::polar(1.0, phase);
    });
}

double plane_wave_k2(const SpectralGrid& grid, std::array<int, 3> mode) {
    double k2 = 0.0;
    for (int d = 0; d < grid.dim(); ++d) k2 += std::pow(kPi / grid.half_width() * mode[d], 2);
    return k2;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("coordinates and wavenumbers follow the definition") {
    const auto g = build_grid(1, 16, 8.0);
    CHECK(g.spacing() == 1.0);
    CHECK(g.size() == 16);
    REQUIRE(g.coords().size() == 16);
    REQUIRE(g.wavenumbers().size() == 16);
    for (int j = 0; j < 16; ++j) {
        CHECK(g.coords()[j] == -8.0 + j);
        const int signed_j = j <= 8 ? j : j - 16;
        CHECK(g.wavenumbers()[j] == doctest::Approx(kPi / 8.0 * signed_j).epsilon(1e-15));
    }
}

TEST_CASE("exactly one Nyquist mode at index n/2") {
    for (int n : {16, 32, 256}) {
        const auto g = build_grid(1, n, 3.0);
        const double nyquist = kPi / g.spacing();
        int count = 0;
        for (double k : g.wavenumbers()) count += std::abs(std::abs(k) - nyquist) < 1e-9 * nyquist;
        CHECK(count == 1);
        CHECK(g.wavenumbers()[n / 2] == doctest::Approx(nyquist));
    }
}

TEST_CASE("h n = 2L") {
    for (int dim : {1, 2, 3}) {
        for (double L : {0.5, 3.0, 8.0, 12.5}) {
            const auto g = build_grid(dim, 32, L);
            CHECK(g.spacing() * g.n() == doctest::Approx(2.0 * L).epsilon(1e-15));
            CHECK(g.size() == static_cast<std::size_t>(std::pow(32, dim)));
        }
    }
}

TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(build_grid(2, 3, 1.0), ConfigError);
    CHECK_THROWS_AS(build_grid(1, 4, 2.0), ConfigError);  // below the n >= 16 floor
    CHECK_THROWS_AS(build_grid(1, 17, 2.0), ConfigError);
    CHECK_THROWS_AS(build_grid(0, 16, 2.0), ConfigError);
    CHECK_THROWS_AS(build_grid(4, 16, 2.0), ConfigError);
    CHECK_THROWS_AS(build_grid(1, 16, 0.0), ConfigError);
    CHECK_THROWS_AS(build_grid(1, 16, -1.0), ConfigError);
}

TEST_CASE("row-major layout and boundary shell") {
    const auto g = build_grid(2, 64, 4.0);
    const auto idx = g.unravel(3 * 64 + 5);
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 5);
    const auto p = g.point(3 * 64 + 5);
    CHECK(p[0] == doctest::Approx(g.coords()[3]));
    CHECK(p[1] == doctest::Approx(g.coords()[5]));
    // Two outer layers for n = 64.
    CHECK(g.boundary_shell().size() == 64 * 64 - 60 * 60);
    for (auto flat : g.boundary_shell()) {
        const auto u = g.unravel(flat);
        const bool outer = u[0] < 2 || u[0] >= 62 || u[1] < 2 || u[1] >= 62;
        REQUIRE(outer);
    }
}

TEST_CASE("fields check their length and grid") {
    const auto a = build_grid(1, 16, 2.0);
    const auto b = build_grid(1, 32, 2.0);
    CHECK_THROWS_AS(RealField(a, std::vector<double>(17)), GridMismatch);
    RealField fa(a), fb(b);
    CHECK_THROWS_AS(fa += fb, GridMismatch);
    fa[3] = std::nan("");
    CHECK_FALSE(fa.all_finite());
}

TEST_CASE("Laplacian of constants vanishes") {
    for (int dim : {1, 2, 3}) {
        const auto g = build_grid(dim, 16, 2.0);
        ComplexField c(g);
        for (auto& v : c.values()) v = Complex{2.5, -1.0};
        CHECK(max_abs(apply_laplacian(c)) < 1e-12);
    }
}

TEST_CASE("Laplacian of an exact plane wave") {
    SUBCASE("1D") {
        const auto g = build_grid(1, 64, 5.0);
        const auto u = plane_wave(g, {3, 0, 0});
        auto expected = u;
        expected *= -plane_wave_k2(g, {3, 0, 0});
        CHECK(max_abs_diff(apply_laplacian(u), expected) < 1e-11);
    }
    SUBCASE("2D") {
        const auto g = build_grid(2, 32, 3.0);
        const auto u = plane_wave(g, {2, -5, 0});
        auto expected = u;
        expected *= -plane_wave_k2(g, {2, -5, 0});
        CHECK(max_abs_diff(apply_laplacian(u), expected) < 1e-10);
    }
    SUBCASE("3D") {
        const auto g = build_grid(3, 16, 2.0);
        const auto u = plane_wave(g, {1, 2, -3});
        auto expected = u;
        expected *= -plane_wave_k2(g, {1, 2, -3});
        CHECK(max_abs_diff(apply_laplacian(u), expected) < 1e-10);
    }
}

TEST_CASE("Laplacian agrees with centered finite differences") {
    // The 3-point stencil differs from u'' by (h^2/12) u'''' + O(h^4). With
    // h = 1/16 and max|u''''| = 12 that leading term alone is h^2 = 3.9e-3,
    // so the sharp oracle is the stencil corrected by its known truncation term.
    const auto g = build_grid(1, 256, 8.0);
    const auto u = ComplexField::sample(g, [](std::span<const double> x) { return Complex{std::exp(-x[0] * x[0])}; });
    const auto lap = apply_laplacian(u);
    const double h = g.spacing();
    const int n = g.n();
    double raw = 0.0;
    double corrected = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = g.coords()[j];
        const auto fd = (u[(j + 1) % n] - 2.0 * u[j] + u[(j + n - 1) % n]) / (h * h);
        const double d4 = (16.0 * std::pow(x, 4) - 48.0 * x * x + 12.0) * std::exp(-x * x);
        raw = std::max(raw, std::abs(fd - lap[j]));
        corrected = std::max(corrected, std::abs(fd - h * h / 12.0 * d4 - lap[j]));
    }
    CHECK(raw <= 1.01 * h * h);
    CHECK(corrected < 1e-4);
}

TEST_CASE("Laplacian is linear") {
    const auto g = build_grid(2, 32, 4.0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto u = noise_complex(g, 2 * seed);
        const auto v = noise_complex(g, 2 * seed + 1);
        const Complex a{0.3, -1.2}, b{-2.0, 0.7};
        auto combo = u;
        combo *= a;
        auto bv = v;
        bv *= b;
        combo += bv;
        auto lhs = apply_laplacian(combo);
        auto rhs = apply_laplacian(u);
        rhs *= a;
        auto lv = apply_laplacian(v);
        lv *= b;
        rhs += lv;
        CHECK(rel_max_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("Laplacian is symmetric and negative semidefinite") {
    for (int dim : {1, 2}) {
        const auto g = build_grid(dim, 32, 4.0);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto u = noise_complex(g, 100 + 2 * seed);
            const auto v = noise_complex(g, 101 + 2 * seed);
            const auto lu = apply_laplacian(u);
            const auto lv = apply_laplacian(v);
            CHECK(inner_product(u, lu).real() <= 0.0);
            const Complex left = inner_product(v, lu);
            const Complex right = inner_product(lv, u);
            CHECK(std::abs(left - right) <= 1e-10 * std::abs(left));
        }
    }
}

TEST_CASE("modified Helmholtz solve") {
    const auto g = build_grid(1, 64, 5.0);
    const double tau = 0.37;
    CHECK(max_abs(solve_modified_helmholtz(ComplexField(g), tau)) == 0.0);

    const auto f = plane_wave(g, {4, 0, 0});
    auto expected = f;
    expected *= 1.0 / (1.0 + tau * plane_wave_k2(g, {4, 0, 0}));
    CHECK(max_abs_diff(solve_modified_helmholtz(f, tau), expected) < 1e-14);

    CHECK_THROWS_AS(solve_modified_helmholtz(f, 0.0), ConfigError);
    CHECK_THROWS_AS(solve_modified_helmholtz(f, -1.0), ConfigError);
}

TEST_CASE("Helmholtz round trip recovers the input") {
    for (int dim : {1, 2, 3}) {
        const auto g = build_grid(dim, 16, 3.0);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const double tau = 0.01 + 0.2 * seed;
            const auto f = noise_complex(g, 300 + seed);
            // (I - tau Lap) applied to the solve, and the solve applied to (I - tau Lap).
            const auto u = solve_modified_helmholtz(f, tau);
            auto back = apply_laplacian(u);
            back *= -tau;
            back += u;
            CHECK(rel_max_diff(back, f) < 1e-12);

            auto g_f = apply_laplacian(f);
            g_f *= -tau;
            g_f += f;
            CHECK(rel_max_diff(solve_modified_helmholtz(g_f, tau), f) < 1e-12);
        }
    }
}

TEST_CASE("rectangle-rule integration") {
    for (int dim : {1, 2, 3}) {
        const double L = 1.5;
        const auto g = build_grid(dim, 16, L);
        RealField one(g);
        for (auto& v : one.values()) v = 1.0;
        CHECK(integrate(one) == doctest::Approx(std::pow(2.0 * L, dim)).epsilon(1e-14));
        CHECK(integrate(RealField(g)) == 0.0);
    }
    const auto g = build_grid(1, 256, 8.0);
    const auto gauss = RealField::sample(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
    CHECK(std::abs(integrate(gauss) - std::sqrt(kPi)) < 1e-12);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto f = noise_real(g, seed);
        for (auto& v : f.values()) v = std::abs(v);
        CHECK(integrate(f) >= 0.0);
    }
}

TEST_CASE("spectral gradient norm of a Gaussian") {
    // integral of |d/dx e^{-x^2/2}|^2 = integral x^2 e^{-x^2} = sqrt(pi)/2
    const auto g = build_grid(1, 256, 8.0);
    const auto u = RealField::sample(g, [](std::span<const double> x) { return std::exp(-0.5 * x[0] * x[0]); });
    CHECK(std::abs(gradient_norm_sq(u) - 0.5 * std::sqrt(kPi)) < 1e-12);
    // Parseval form equals -<u, Lap u>.
    const auto uc = to_complex(u);
    CHECK(gradient_norm_sq(uc) == doctest::Approx(-inner_product(uc, apply_laplacian(uc)).real()).epsilon(1e-13));
}

TEST_CASE("transforms invert each other") {
    const auto g = build_grid(3, 16, 2.0);
    const auto u = noise_complex(g, 11);
    CHECK(rel_max_diff(inverse_transform(g, forward_transform(u)), u) < 1e-14);
}

}
