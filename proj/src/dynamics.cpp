#include "hartree/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hartree/random.hpp"

namespace hartree {

namespace {

constexpr std::uint64_t kPerturbationStream = 0x3001;
constexpr double kSolitonOrbitTol = 1e-6;

void check_boundary(const ComplexField& psi, double tol, double t) {
    const double b = boundary_max(psi);
    if (b > tol) {
        std::ostringstream msg;
        msg << "|psi| = " << b << " on the boundary shell at t = " << t << " (tolerance " << tol
            << "); enlarge the half width L";
        throw BoundaryContamination(msg.str());
    }
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * std::numbers::pi);
    return a;
}

int steps_for(double total_time, double dt) {
    if (!(total_time > 0.0) || !(dt > 0.0)) throw ConfigError("time horizon and dt must be positive");
    return static_cast<int>(std::llround(total_time / dt));
}

}  // namespace

void EvolveConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("time step dt must be positive");
    if (steps < 1) throw ConfigError("steps must be at least 1");
    if (record_stride < 1) throw ConfigError("record stride must be at least 1");
    if (!(kappa >= 0.0)) throw ConfigError("coupling kappa must be nonnegative");
    if (!(boundary_tol > 0.0)) throw ConfigError("boundary tolerance must be positive");
}

SplitStepPropagator::SplitStepPropagator(const RieszOperator& riesz, double dt)
    : riesz_(riesz), dt_(dt) {
    const auto k2 = riesz.grid().wavenumber_squared();
    kinetic_phase_.resize(k2.size());
    const double scale = 1.0 / static_cast<double>(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) kinetic_phase_[i] = scale * std::polar(1.0, -dt * k2[i]);
    modes_.resize(k2.size());
}

void potential_substep(ComplexField& psi, double t, const RieszOperator& riesz) {
    require_same_grid(psi.grid(), riesz.grid());
    const auto r2 = psi.grid().radius_squared();
    const auto vh = hartree_potential(psi, riesz);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= std::polar(1.0, -t * (r2[i] + vh[i]));
}

void SplitStepPropagator::step(ComplexField& psi) {
    potential_substep(psi, 0.5 * dt_, riesz_);
    std::copy(psi.values().begin(), psi.values().end(), modes_.begin());
    const auto& fft = psi.grid().fft();
    fft.forward(modes_);
    for (std::size_t i = 0; i < modes_.size(); ++i) modes_[i] *= kinetic_phase_[i];
    fft.backward(modes_);
    std::copy(modes_.begin(), modes_.end(), psi.values().begin());
    potential_substep(psi, 0.5 * dt_, riesz_);
}

ComplexField strang_step(const ComplexField& psi, double dt, const RieszOperator& riesz) {
    SplitStepPropagator prop(riesz, dt);
    auto out = psi;
    prop.step(out);
    return out;
}

EvolveResult evolve(const ComplexField& psi0, const EvolveConfig& cfg, const RieszOperator& riesz,
                    const std::optional<RealField>& q_ref) {
    cfg.validate();
    require_same_grid(psi0.grid(), riesz.grid());
    std::optional<ComplexField> q;
    if (q_ref) {
        require_same_grid(q_ref->grid(), psi0.grid());
        q = to_complex(*q_ref);
    }
    check_boundary(psi0, cfg.boundary_tol, 0.0);

    const auto op = riesz.with_coupling(cfg.kappa * riesz.coupling());
    SplitStepPropagator prop(op, cfg.dt);
    EvolveResult result{psi0, {}};
    auto& psi = result.psi;

    double last_wrapped = 0.0;
    double unwrapped = 0.0;
    auto record = [&](int step) {
        TraceRow row;
        row.t = step * cfg.dt;
        row.mass = mass(psi);
        row.energy = energy(psi, op).total;
        row.bound_quantity = gradient_norm_sq(psi) + second_moment(psi);
        if (q) {
            row.orbit_distance = orbit_distance(psi, *q);
            const double wrapped = optimal_phase(psi, *q);
            if (result.trace.rows.empty()) {
                unwrapped = wrapped;
            } else {
                const double delta = wrap_angle(wrapped - last_wrapped);
                if (std::abs(delta) > 0.9 * std::numbers::pi) {
                    std::ostringstream msg;
                    msg << "phase moved by " << delta << " rad between recorded rows at t = " << row.t
                        << "; use a smaller record stride";
                    throw PhaseAliasing(msg.str());
                }
                unwrapped += delta;
            }
            last_wrapped = wrapped;
            row.phase = unwrapped;
        } else {
            row.orbit_distance = std::numeric_limits<double>::quiet_NaN();
            row.phase = std::numeric_limits<double>::quiet_NaN();
        }
        result.trace.rows.push_back(row);
    };

    record(0);
    for (int s = 1; s <= cfg.steps; ++s) {
        prop.step(psi);
        check_boundary(psi, cfg.boundary_tol, s * cfg.dt);
        if (s % cfg.record_stride == 0 || s == cfg.steps) record(s);
    }
    return result;
}

SolitonReport soliton_phase_check(const GroundStateResult& ground, double total_time, double dt,
                                  const RieszOperator& riesz, int record_stride) {
    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps_for(total_time, dt);
    cfg.record_stride = record_stride;
    auto run = evolve(to_complex(ground.q), cfg, riesz, ground.q);

    SolitonReport report;
    report.omega = ground.omega;
    const double e0 = run.trace.rows.front().energy;
    for (const auto& row : run.trace.rows) {
        report.max_phase_error = std::max(report.max_phase_error, std::abs(row.phase - ground.omega * row.t));
        report.max_orbit_distance = std::max(report.max_orbit_distance, row.orbit_distance);
        report.energy_drift = std::max(report.energy_drift, std::abs(row.energy - e0) / std::abs(e0));
    }
    report.trace = std::move(run.trace);
    return report;
}

ComplexField stability_perturbation(const SpectralGrid& grid, std::uint64_t seed) {
    CounterRng rng(seed, kPerturbationStream);
    MixtureSpec spec;
    spec.min_bumps = 2;
    spec.max_bumps = 4;
    spec.center_radius = 1.0;
    spec.min_width = 0.8;
    spec.max_width = 1.25;
    spec.min_amplitude = -1.0;
    spec.max_amplitude = 1.0;
    const auto re = gaussian_mixture(grid, spec, rng);
    const auto im = gaussian_mixture(grid, spec, rng);
    ComplexField w(grid);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = Complex{re[i], im[i]};
    const double norm = std::sqrt(h_norm_sq(w));
    if (!(norm > 0.0)) throw ZeroField("degenerate perturbation");
    w *= 1.0 / norm;
    return w;
}

StabilityReport stability_experiment(const GroundStateResult& ground, double eps, double total_time,
                                     double dt, std::uint64_t seed, const RieszOperator& riesz,
                                     int record_stride) {
    if (!(eps >= 0.0)) throw ConfigError("perturbation size must be nonnegative");
    const auto& grid = ground.q.grid();
    auto psi0 = to_complex(ground.q);
    if (eps > 0.0) {
        auto w = stability_perturbation(grid, seed);
        for (std::size_t i = 0; i < psi0.size(); ++i) psi0[i] += eps * w[i];
    }

    StabilityReport report;
    report.eps = eps;
    report.initial_distance = orbit_distance(psi0, ground.q);
    if (report.initial_distance > eps * (1.0 + 1e-12) + 1e-14) {
        throw InvariantViolation("perturbed initial state is farther than eps from the orbit");
    }

    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps_for(total_time, dt);
    cfg.record_stride = record_stride;
    auto run = evolve(psi0, cfg, riesz, ground.q);
    for (const auto& row : run.trace.rows) report.sup_distance = std::max(report.sup_distance, row.orbit_distance);
    if (eps > 0.0) {
        report.ratio = report.sup_distance / eps;
    } else {
        report.ratio = report.sup_distance < kSolitonOrbitTol ? 0.0 : std::numeric_limits<double>::infinity();
    }
    report.trace = std::move(run.trace);
    return report;
}

}  // namespace hartree
