#include "hartree/ground.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hartree/random.hpp"

namespace hartree {

namespace {

constexpr std::uint64_t kInitStream = 0x1001;
constexpr int kWarmupIterations = 100;

RealField rescale_to_mass(RealField u, double target) {
    const double m = mass(u);
    if (!(m > 0.0)) throw ZeroField("cannot normalize a zero field");
    u *= std::sqrt(target / m);
    return u;
}

}  // namespace

void GroundConfig::validate() const {
    if (!(mass_target > 0.0)) throw ConfigError("mass target must be positive");
    if (!(tau > 0.0)) throw ConfigError("pseudo-time step tau must be positive");
    if (!(tol_update > 0.0)) throw ConfigError("update tolerance must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
        throw ConfigError("backtrack factor must lie in (0, 1)");
    }
    if (!(boundary_tol > 0.0)) throw ConfigError("boundary tolerance must be positive");
    if (!(residual_tol > 0.0)) throw ConfigError("residual tolerance must be positive");
    if (random_start && !(perturbation_sigma > 0.0)) {
        throw ConfigError("perturbation sigma must be positive");
    }
}

double energy_roundoff(const SpectralGrid& grid) {
    return 8.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(grid.size()));
}

RealField harmonic_ground_mode(const SpectralGrid& grid, double mass_value) {
    const double norm = std::sqrt(mass_value) * std::pow(std::numbers::pi, -0.25 * grid.dim());
    const auto r2 = grid.radius_squared();
    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = norm * std::exp(-0.5 * r2[i]);
    return out;
}

RealField initial_guess(const SpectralGrid& grid, const GroundConfig& cfg) {
    auto u = harmonic_ground_mode(grid, cfg.mass_target);
    if (cfg.random_start) {
        CounterRng rng(cfg.seed, kInitStream);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] *= std::exp(cfg.perturbation_sigma * rng.normal());
        }
        u = rescale_to_mass(std::move(u), cfg.mass_target);
    }
    return u;
}

RealField gfdn_step(const RealField& u, const GroundConfig& cfg, const RieszOperator& riesz,
                    StepDiagnostics* diag) {
    const auto& grid = u.grid();
    require_same_grid(grid, riesz.grid());
    const double m = mass(u);
    if (!(m > 0.0)) throw ZeroField("gradient-flow step on a zero field");

    auto potential = hartree_potential(u, riesz);
    const auto r2 = grid.radius_squared();
    double beta = 0.0;
    double pairing = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        potential[i] += r2[i];
        beta = std::max(beta, potential[i]);
        pairing += potential[i] * u[i] * u[i];
    }
    const double mu = (gradient_norm_sq(u) + grid.cell_volume() * pairing) / m;

    const double tau = cfg.tau;
    const double a = 1.0 + tau * beta;
    ComplexField rhs(grid);
    for (std::size_t i = 0; i < u.size(); ++i) {
        rhs[i] = (a + tau * (mu - potential[i])) * u[i] / a;
    }
    const auto star = solve_modified_helmholtz(rhs, tau / a);

    RealField next(grid);
    double clipped = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        const double v = star[i].real();
        if (v < 0.0) {
            clipped += v * v;
            next[i] = 0.0;
        } else {
            next[i] = v;
        }
    }
    const double norm_sq = mass(next);
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
        throw Divergence("gradient-flow step produced a vanishing or non-finite field");
    }
    next *= std::sqrt(cfg.mass_target / norm_sq);

    if (diag != nullptr) {
        diag->clipped_mass = grid.cell_volume() * clipped;
        diag->multiplier = mu;
        diag->shift = beta;
    }
    return next;
}

double lagrange_multiplier(const RealField& q, const RieszOperator& riesz) {
    const double m = mass(q);
    if (!(m > 0.0)) throw ZeroField("Lagrange multiplier of a zero field is undefined");
    const auto e = energy(q, riesz);
    // 2 * kinetic + 2 * potential + 4 * hartree undoes the 1/2, 1/2, 1/4 weights.
    return -(2.0 * e.kinetic + 2.0 * e.potential + 4.0 * e.hartree) / m;
}

GroundStateResult solve_ground(const GroundConfig& cfg, const SpectralGrid& grid,
                               const RieszOperator& riesz, std::optional<RealField> initial) {
    cfg.validate();
    require_same_grid(grid, riesz.grid());

    RealField u = initial ? rescale_to_mass(std::move(*initial), cfg.mass_target)
                          : initial_guess(grid, cfg);
    require_same_grid(u.grid(), grid);

    GroundStateResult result{u, 0.0, {}, 0.0, 0, 0.0, 0.0, 0, 0.0, 0.0, 0.0, {}};
    EnergyBreakdown e = energy(u, riesz);
    result.energy_trace.push_back(e.total);

    const double roundoff = energy_roundoff(grid);
    GroundConfig step_cfg = cfg;
    bool converged = false;
    int it = 0;
    for (; it < cfg.max_iter && !converged; ++it) {
        StepDiagnostics diag;
        RealField next = gfdn_step(u, step_cfg, riesz, &diag);
        EnergyBreakdown e_next = energy(next, riesz);
        while (e_next.total > e.total + roundoff * std::abs(e.total)) {
            step_cfg.tau *= cfg.backtrack_factor;
            ++result.backtracks;
            if (step_cfg.tau < 1e-14 * cfg.tau) {
                throw Divergence("energy keeps increasing after repeated step reductions");
            }
            next = gfdn_step(u, step_cfg, riesz, &diag);
            e_next = energy(next, riesz);
        }

        double update = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) update = std::max(update, std::abs(next[i] - u[i]));
        update /= step_cfg.tau * std::sqrt(cfg.mass_target);

        result.max_energy_increase = std::max(result.max_energy_increase, e_next.total - e.total);
        if (it >= kWarmupIterations) result.clipped_mass_after_warmup += diag.clipped_mass;
        result.energy_trace.push_back(e_next.total);
        result.final_update = update;
        u = std::move(next);
        e = e_next;
        converged = update < cfg.tol_update;
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "ground-state iteration did not converge in " << cfg.max_iter
            << " iterations (last update rate " << result.final_update << ")";
        throw MaxIterExceeded(msg.str());
    }

    result.iterations = it;
    result.tau_final = step_cfg.tau;
    result.boundary_max = boundary_max(u);
    if (result.boundary_max > cfg.boundary_tol) {
        std::ostringstream msg;
        msg << "ground state is " << result.boundary_max << " on the boundary shell (tolerance "
            << cfg.boundary_tol << "); increase the half width L";
        throw BoundaryContamination(msg.str());
    }
    result.omega = lagrange_multiplier(u, riesz);
    result.d_m = e;
    result.residual = el_residual(u, result.omega, riesz);
    if (!(result.residual < cfg.residual_tol)) {
        std::ostringstream msg;
        msg << "converged iterate has Euler-Lagrange residual " << result.residual
            << " above tolerance " << cfg.residual_tol;
        throw SolverError(msg.str());
    }
    result.q = std::move(u);
    return result;
}

std::vector<DCurvePoint> d_curve(std::span<const double> masses, const GroundConfig& base,
                                 const SpectralGrid& grid, const RieszOperator& riesz) {
    for (std::size_t i = 0; i < masses.size(); ++i) {
        if (!(masses[i] > 0.0)) throw ConfigError("masses must be positive");
        if (i > 0 && !(masses[i] > masses[i - 1])) throw ConfigError("masses must be strictly increasing");
    }
    std::vector<DCurvePoint> curve;
    std::optional<RealField> warm;
    for (double m : masses) {
        GroundConfig cfg = base;
        cfg.mass_target = m;
        auto res = solve_ground(cfg, grid, riesz, warm);
        curve.push_back({m, res.d_m.total, res.omega, res.residual});
        warm = std::move(res.q);
    }
    return curve;
}

UniquenessReport multistart_uniqueness(const GroundConfig& cfg, int trials,
                                       const SpectralGrid& grid, const RieszOperator& riesz) {
    if (trials < 2) throw ConfigError("multistart needs at least two trials");
    std::vector<std::uint64_t> seeds(trials);
    for (int i = 0; i < trials; ++i) seeds[i] = cfg.seed + static_cast<std::uint64_t>(i);
    return multistart_uniqueness(cfg, seeds, grid, riesz);
}

UniquenessReport multistart_uniqueness(const GroundConfig& cfg, std::span<const std::uint64_t> seeds,
                                       const SpectralGrid& grid, const RieszOperator& riesz) {
    if (seeds.size() < 2) throw ConfigError("multistart needs at least two trials");
    UniquenessReport report;
    std::vector<RealField> states;
    for (auto seed : seeds) {
        GroundConfig trial = cfg;
        trial.seed = seed;
        trial.random_start = true;
        auto res = solve_ground(trial, grid, riesz);
        report.seeds.push_back(seed);
        report.omegas.push_back(res.omega);
        report.energies.push_back(res.d_m.total);
        states.push_back(std::move(res.q));
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            double sum = 0.0;
            for (std::size_t p = 0; p < grid.size(); ++p) {
                const double d = std::abs(states[i][p]) - std::abs(states[j][p]);
                sum += d * d;
            }
            report.max_pairwise_l2 = std::max(report.max_pairwise_l2, std::sqrt(grid.cell_volume() * sum));
        }
    }
    auto spread = [](const std::vector<double>& v) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    report.omega_spread = spread(report.omegas);
    report.energy_spread = spread(report.energies);
    return report;
}

}  // namespace hartree
