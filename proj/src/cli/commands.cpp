#include "hartree/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hartree/convexity.hpp"
#include "hartree/dynamics.hpp"
#include "hartree/error.hpp"
#include "hartree/field_io.hpp"
#include "hartree/functionals.hpp"
#include "hartree/ground.hpp"
#include "hartree/riesz.hpp"

#ifndef HARTREE_VERSION
#define HARTREE_VERSION "dev"
#endif

namespace hartree::cli {

const char* version() { return HARTREE_VERSION; }

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Registers options on a subcommand and remembers how to serialize their
// resolved values, so every manifest carries the full parameter set.
class FlagSet {
public:
    explicit FlagSet(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* option(const std::string& name, T& value, const std::string& help) {
        emit_.emplace_back([name, &value](json& j) { j[name] = value; });
        return app_->add_option("--" + name, value, help)->capture_default_str();
    }

    // Paths are recorded absolute so a manifest replays from any directory.
    CLI::Option* path(const std::string& name, std::string& value, const std::string& help) {
        emit_.emplace_back([name, &value](json& j) {
            j[name] = value.empty() ? std::string() : fs::absolute(value).lexically_normal().string();
        });
        return app_->add_option("--" + name, value, help)->capture_default_str();
    }

    CLI::Option* flag(const std::string& name, bool& value, const std::string& help) {
        emit_.emplace_back([name, &value](json& j) { j[name] = value; });
        return app_->add_flag("--" + name, value, help);
    }

    json parameters() const {
        json j = json::object();
        for (const auto& e : emit_) e(j);
        return j;
    }

private:
    CLI::App* app_;
    std::vector<std::function<void(json&)>> emit_;
};

struct Physics {
    int dim = 1;
    double alpha = 0.5;
    double mass = 1.0;
    int grid_n = 256;
    double half_width = 8.0;
    bool linear = false;
};

struct Solver {
    double tau = 0.05;
    double tol = 1e-10;
    int max_iter = 50000;
};

void add_physics(FlagSet& f, Physics& p) {
    f.option("dim", p.dim, "spatial dimension N (1, 2 or 3)");
    f.option("alpha", p.alpha, "Riesz exponent, 0 < alpha < N");
    f.option("mass", p.mass, "prescribed mass m");
    f.option("grid-n", p.grid_n, "points per dimension (even, >= 16)");
    f.option("half-width", p.half_width, "box half width L");
    f.flag("linear-oracle", p.linear, "drop the Hartree term (harmonic oscillator)");
}

void add_solver(FlagSet& f, Solver& s) {
    f.option("tau", s.tau, "gradient-flow pseudo-time step");
    f.option("tol", s.tol, "update-rate stopping tolerance");
    f.option("max-iter", s.max_iter, "gradient-flow iteration cap");
}

RieszOperator make_riesz(const SpectralGrid& grid, double alpha, bool linear) {
    auto op = build_riesz(grid, alpha);
    return linear ? op.with_coupling(0.0) : op;
}

GroundConfig make_ground_config(const Physics& p, const Solver& s) {
    GroundConfig cfg;
    cfg.mass_target = p.mass;
    cfg.tau = s.tau;
    cfg.tol_update = s.tol;
    cfg.max_iter = s.max_iter;
    return cfg;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void prepare_prefix(const std::string& prefix) {
    if (prefix.empty()) throw ConfigError("--out must not be empty");
    const auto parent = fs::path(prefix).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

void write_manifest(const std::string& prefix, const std::string& command, const json& params,
                    const std::vector<std::string>& outputs) {
    json doc;
    doc["format"] = "hartree-manifest";
    doc["artifact"] = "hartree_lab";
    doc["version"] = version();
    doc["command"] = command;
    doc["parameters"] = params;
    doc["outputs"] = outputs;
    doc["created_utc"] = utc_timestamp();
    write_json(prefix + ".manifest", doc);
}

void write_trace(const std::string& path, const EvolutionTrace& trace) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "t,mass,energy,bound_quantity,orbit_distance,phase\n";
    for (const auto& r : trace.rows) {
        out << fmt17(r.t) << ',' << fmt17(r.mass) << ',' << fmt17(r.energy) << ',' << fmt17(r.bound_quantity)
            << ',' << fmt17(r.orbit_distance) << ',' << fmt17(r.phase) << '\n';
    }
}

json breakdown_json(const EnergyBreakdown& e) {
    json j;
    j["kinetic"] = e.kinetic;
    j["potential"] = e.potential;
    j["hartree"] = e.hartree;
    j["total"] = e.total;
    return j;
}

// ---- ground ---------------------------------------------------------------

struct GroundArgs {
    Physics physics;
    Solver solver;
    std::uint64_t seed = 0;
    bool random_init = false;
    std::string out = "ground";
};

int cmd_ground(const GroundArgs& a, const json& params, std::ostream& out) {
    const auto grid = build_grid(a.physics.dim, a.physics.grid_n, a.physics.half_width);
    const auto riesz = make_riesz(grid, a.physics.alpha, a.physics.linear);
    auto cfg = make_ground_config(a.physics, a.solver);
    cfg.seed = a.seed;
    cfg.random_start = a.random_init;
    cfg.validate();
    prepare_prefix(a.out);

    const auto res = solve_ground(cfg, grid, riesz);
    write_field(a.out + ".field", res.q);
    json r;
    r["command"] = "ground";
    r["omega"] = res.omega;
    r["d_m"] = breakdown_json(res.d_m);
    r["mass"] = mass(res.q);
    r["residual"] = res.residual;
    r["iterations"] = res.iterations;
    r["backtracks"] = res.backtracks;
    r["tau_final"] = res.tau_final;
    r["boundary_max"] = res.boundary_max;
    r["final_update"] = res.final_update;
    write_json(a.out + ".result", r);
    write_manifest(a.out, "ground", params, {a.out + ".field", a.out + ".result"});

    out << "omega " << fmt17(res.omega) << "\nd_m " << fmt17(res.d_m.total) << "\nresidual "
        << res.residual << "\niterations " << res.iterations << '\n';
    return kOk;
}

// ---- evolve ---------------------------------------------------------------

struct EvolveArgs {
    std::string initial;
    std::string reference;
    double dt = 1e-3;
    int steps = 1;
    int stride = 1;
    double alpha = 0.5;
    bool linear = false;
    std::string out = "evolve";
};

int cmd_evolve(const EvolveArgs& a, const json& params, std::ostream& out) {
    EvolveConfig cfg;
    cfg.dt = a.dt;
    cfg.steps = a.steps;
    cfg.record_stride = a.stride;
    cfg.validate();
    prepare_prefix(a.out);

    const auto psi0 = read_complex_field(a.initial);
    const auto riesz = make_riesz(psi0.grid(), a.alpha, a.linear);
    std::optional<RealField> reference;
    if (!a.reference.empty()) reference = read_real_field(a.reference);

    const auto res = evolve(psi0, cfg, riesz, reference);
    write_trace(a.out + ".trace", res.trace);
    write_field(a.out + ".field", res.psi);
    write_manifest(a.out, "evolve", params, {a.out + ".trace", a.out + ".field"});

    const auto& last = res.trace.rows.back();
    out << "t " << fmt17(last.t) << "\nmass " << fmt17(last.mass) << "\nenergy " << fmt17(last.energy) << '\n';
    return kOk;
}

// ---- stability ------------------------------------------------------------

struct StabilityArgs {
    Physics physics{1, 0.5, 1.0, 256, 12.0, false};
    Solver solver;
    double eps = 1e-2;
    double time = 10.0;
    double dt = 1e-3;
    int stride = 10;
    std::uint64_t seed = 0;
    double max_ratio = 10.0;
    std::string ground;
    std::string out = "stability";
};

int cmd_stability(const StabilityArgs& a, const json& params, std::ostream& out, std::ostream& err) {
    if (!(a.max_ratio >= 0.0)) throw ConfigError("--max-ratio must be nonnegative");
    if (!(a.eps >= 0.0)) throw ConfigError("--eps must be nonnegative");
    if (a.stride < 1) throw ConfigError("--stride must be at least 1");
    prepare_prefix(a.out);

    std::optional<RieszOperator> riesz;
    auto solve_or_load = [&]() -> GroundStateResult {
        if (a.ground.empty()) {
            const auto grid = build_grid(a.physics.dim, a.physics.grid_n, a.physics.half_width);
            riesz = make_riesz(grid, a.physics.alpha, a.physics.linear);
            return solve_ground(make_ground_config(a.physics, a.solver), grid, *riesz);
        }
        auto q = read_real_field(a.ground);
        riesz = make_riesz(q.grid(), a.physics.alpha, a.physics.linear);
        GroundStateResult loaded{q, lagrange_multiplier(q, *riesz), energy(q, *riesz),
                                 0.0, 0, 0.0, 0.0, 0, 0.0, 0.0, 0.0, {}};
        loaded.residual = el_residual(q, loaded.omega, *riesz);
        loaded.boundary_max = boundary_max(q);
        return loaded;
    };
    const auto ground = solve_or_load();

    const auto rep = stability_experiment(ground, a.eps, a.time, a.dt, a.seed, *riesz, a.stride);
    const bool pass = rep.ratio < a.max_ratio;
    write_trace(a.out + ".trace", rep.trace);
    json s;
    s["command"] = "stability";
    s["eps"] = rep.eps;
    s["omega"] = ground.omega;
    s["initial_distance"] = rep.initial_distance;
    s["sup_distance"] = rep.sup_distance;
    s["ratio"] = std::isfinite(rep.ratio) ? json(rep.ratio) : json("inf");
    s["max_ratio"] = a.max_ratio;
    s["pass"] = pass;
    write_json(a.out + ".summary", s);
    write_manifest(a.out, "stability", params, {a.out + ".trace", a.out + ".summary"});

    out << "sup_distance " << fmt17(rep.sup_distance) << "\nratio " << fmt17(rep.ratio) << '\n';
    if (!pass) {
        err << "hartree_lab stability: ratio " << rep.ratio << " is not below --max-ratio " << a.max_ratio << '\n';
        return kAssertionFailed;
    }
    return kOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    Physics physics;
    Solver solver;
    double mass_min = 1e-3;
    double mass_max = 1.0;
    int count = 8;
    std::string out = "sweep";
};

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (count < 1) throw ConfigError("--count must be at least 1");
    if (!(lo > 0.0)) throw ConfigError("--mass-min must be positive");
    if (count == 1) return {lo};
    if (!(hi > lo)) throw ConfigError("--mass-max must exceed --mass-min when --count > 1");
    std::vector<double> m(count);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int i = 0; i < count; ++i) m[i] = std::exp(a + (b - a) * i / (count - 1));
    m.front() = lo;
    m.back() = hi;
    return m;
}

int cmd_sweep(const SweepArgs& a, const json& params, std::ostream& out, std::ostream& err) {
    const auto masses = log_spaced(a.mass_min, a.mass_max, a.count);
    const auto grid = build_grid(a.physics.dim, a.physics.grid_n, a.physics.half_width);
    const auto riesz = make_riesz(grid, a.physics.alpha, a.physics.linear);
    auto cfg = make_ground_config(a.physics, a.solver);
    cfg.mass_target = masses.front();
    cfg.validate();
    prepare_prefix(a.out);

    const auto curve = d_curve(masses, cfg, grid, riesz);
    std::ofstream csv(a.out + ".csv", std::ios::trunc);
    if (!csv) throw FormatError("cannot open " + a.out + ".csv for writing");
    csv << "m,d_m,omega,residual,increasing,above_bound\n";
    int violations = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const auto& p = curve[i];
        const bool increasing = i == 0 || p.energy > curve[i - 1].energy;
        // d(m) >= N m / 2 up to roundoff (equality holds for the linear oracle).
        const double bound = 0.5 * a.physics.dim * p.mass;
        const bool above = p.energy >= bound * (1.0 - 1e-12);
        csv << fmt17(p.mass) << ',' << fmt17(p.energy) << ',' << fmt17(p.omega) << ',' << fmt17(p.residual)
            << ',' << (increasing ? 1 : 0) << ',' << (above ? 1 : 0) << '\n';
        if (!increasing || !above || !(p.omega < 0.0)) {
            ++violations;
            err << "hartree_lab sweep: m = " << p.mass << " violates "
                << (!increasing ? "monotonicity" : !above ? "the lower bound N m / 2" : "omega < 0") << '\n';
        }
    }
    csv.close();
    write_manifest(a.out, "sweep", params, {a.out + ".csv"});
    out << "rows " << curve.size() << '\n';
    return violations == 0 ? kOk : kAssertionFailed;
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
    Physics physics;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string out = "check";
};

int companion_n(int dim) { return dim == 1 ? 64 : dim == 2 ? 32 : 16; }

int cmd_check(const CheckArgs& a, const json& params, std::ostream& out, std::ostream& err) {
    if (a.trials < 1) throw ConfigError("--trials must be at least 1");
    const auto grid = build_grid(a.physics.dim, a.physics.grid_n, a.physics.half_width);
    const auto riesz = make_riesz(grid, a.physics.alpha, a.physics.linear);
    const double kappa = riesz.coupling();
    prepare_prefix(a.out);

    std::vector<std::string> violations;
    auto violate = [&](std::uint64_t seed, const std::string& what) {
        std::ostringstream msg;
        msg << "trial seed " << seed << ": " << what;
        violations.push_back(msg.str());
    };

    json trials = json::array();
    double min_gap = std::numeric_limits<double>::infinity();
    double min_relative_gap = std::numeric_limits<double>::infinity();
    for (int t = 0; t < a.trials; ++t) {
        const std::uint64_t ts = a.seed + static_cast<std::uint64_t>(t);
        const auto pair = random_pair(grid, a.physics.mass, ts);
        const double scale = std::max(std::abs(energy_of_density(pair.rho1, riesz)),
                                      std::abs(energy_of_density(pair.rho2, riesz)));
        const double gap = convexity_gap(pair, riesz);
        const double grad_gap = gradient_term_convexity(pair);
        const double pot_gap = potential_term_convexity(pair);
        double riesz_gap = std::numeric_limits<double>::quiet_NaN();
        try {
            riesz_gap = riesz_term_convexity(pair, riesz);
        } catch (const InvariantViolation& e) {
            violate(ts, e.what());
        }
        auto delta = pair.rho1;
        delta -= pair.rho2;
        const double identity = pair.lambda * (1.0 - pair.lambda) * riesz_pairing(riesz, delta, delta);
        const double identity_error = std::abs(riesz_gap - identity) / std::max(std::abs(identity), 1e-300);
        const double recomposed = 0.5 * grad_gap + 0.5 * pot_gap + 0.25 * kappa * riesz_gap;
        const double decomposition_error = std::abs(gap - recomposed) / std::abs(gap);

        if (!(gap > 1e-12 * scale)) violate(ts, "convexity gap " + fmt17(gap) + " is not strictly positive");
        if (!(grad_gap >= -1e-10)) violate(ts, "gradient-term gap " + fmt17(grad_gap) + " below -1e-10");
        if (!(riesz_gap >= -1e-10)) violate(ts, "Riesz-term gap " + fmt17(riesz_gap) + " below -1e-10");
        if (!(std::abs(pot_gap) < 1e-13)) violate(ts, "potential-term gap " + fmt17(pot_gap) + " is not zero");
        if (!(decomposition_error <= 1e-10)) {
            violate(ts, "gap does not split into its terms (relative error " + fmt17(decomposition_error) + ")");
        }

        min_gap = std::min(min_gap, gap);
        min_relative_gap = std::min(min_relative_gap, gap / scale);
        json row;
        row["seed"] = ts;
        row["lambda"] = pair.lambda;
        row["scale"] = scale;
        row["gap"] = gap;
        row["gradient_gap"] = grad_gap;
        row["potential_gap"] = pot_gap;
        row["riesz_gap"] = riesz_gap;
        row["riesz_identity_error"] = identity_error;
        row["decomposition_error"] = decomposition_error;
        trials.push_back(row);
    }

    const double clamp = riesz.clamp_magnitude();
    const double peak = riesz.peak_mode();
    if (!(clamp <= 1e-8 * peak)) {
        violations.push_back("kernel clamp " + fmt17(clamp) + " exceeds 1e-8 of the peak mode");
    }

    const auto small = build_grid(a.physics.dim, companion_n(a.physics.dim), a.physics.half_width);
    const auto small_riesz = build_riesz(small, a.physics.alpha);
    double fft_error = 0.0;
    for (int k = 0; k < 10; ++k) {
        const std::uint64_t ds = a.seed + static_cast<std::uint64_t>(k);
        const auto rho = random_density(small, a.physics.mass, ds, 2);
        const auto fast = convolve(small_riesz, rho);
        const auto slow = direct_convolve(small_riesz, rho);
        double diff = 0.0;
        double ref = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            diff = std::max(diff, std::abs(fast[i] - slow[i]));
            ref = std::max(ref, std::abs(slow[i]));
        }
        const double rel = diff / ref;
        fft_error = std::max(fft_error, rel);
        if (!(rel <= 1e-12)) {
            violate(ds, "FFT and direct convolution differ by " + fmt17(rel) + " (relative max norm)");
        }
    }

    json report;
    report["command"] = "check";
    // The output location is left out so reports compare byte for byte.
    json report_params = params;
    report_params.erase("out");
    report["parameters"] = report_params;
    report["trials"] = trials;
    report["min_gap"] = min_gap;
    report["min_relative_gap"] = min_relative_gap;
    report["kernel_clamp"] = clamp;
    report["kernel_peak"] = peak;
    report["kernel_max_imag"] = riesz.kernel_hat_max_imag();
    report["companion_grid"] = {{"dim", small.dim()}, {"n", small.n()}, {"half_width", small.half_width()}};
    report["fft_direct_max_error"] = fft_error;
    report["violations"] = violations;
    report["pass"] = violations.empty();
    write_json(a.out + ".report", report);
    write_manifest(a.out, "check", params, {a.out + ".report"});

    out << "trials " << a.trials << "\nmin_gap " << fmt17(min_gap) << "\nfft_direct_max_error " << fft_error
        << '\n';
    for (const auto& v : violations) err << "hartree_lab check: " << v << '\n';
    return violations.empty() ? kOk : kAssertionFailed;
}

// ---- replay ---------------------------------------------------------------

std::vector<std::string> manifest_args(const std::string& path, const std::string& out_override) {
    const auto doc = read_json(path);
    try {
        if (doc.at("format").get<std::string>() != "hartree-manifest") throw FormatError(path + " is not a manifest");
        std::vector<std::string> args{doc.at("command").get<std::string>()};
        for (const auto& [key, value] : doc.at("parameters").items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) args.push_back("--" + key);
                continue;
            }
            std::string text = value.is_string() ? value.get<std::string>() : value.dump();
            if (key == "out" && !out_override.empty()) text = out_override;
            if (text.empty()) continue;
            args.push_back("--" + key);
            args.push_back(text);
        }
        return args;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed manifest " + path + ": " + e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ground states and dynamics of the Hartree equation with a harmonic trap", "hartree_lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    std::string active;
    std::function<int(const json&)> action;
    json params;
    std::vector<std::unique_ptr<FlagSet>> flag_sets;
    auto command = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        flag_sets.push_back(std::make_unique<FlagSet>(sub));
        return std::pair<CLI::App*, FlagSet*>{sub, flag_sets.back().get()};
    };

    GroundArgs ground;
    {
        auto [sub, f] = command("ground", "compute the normalized ground state Q and omega");
        add_physics(*f, ground.physics);
        add_solver(*f, ground.solver);
        f->option("seed", ground.seed, "seed for --random-init");
        f->flag("random-init", ground.random_init, "start from a seeded random perturbation");
        f->path("out", ground.out, "output prefix");
        sub->callback([&, f = f] {
            params = f->parameters();
            action = [&](const json& p) { return cmd_ground(ground, p, out); };
        });
    }

    EvolveArgs evolve_args;
    {
        auto [sub, f] = command("evolve", "integrate the time-dependent equation from a field file");
        f->path("initial", evolve_args.initial, "initial field file")->required();
        f->option("dt", evolve_args.dt, "time step")->required();
        f->option("steps", evolve_args.steps, "number of steps")->required();
        f->option("stride", evolve_args.stride, "record every STRIDE steps");
        f->path("reference", evolve_args.reference, "ground-state field for orbit distance and phase");
        f->option("alpha", evolve_args.alpha, "Riesz exponent, 0 < alpha < N");
        f->flag("linear-oracle", evolve_args.linear, "drop the Hartree term");
        f->path("out", evolve_args.out, "output prefix");
        sub->callback([&, f = f] {
            params = f->parameters();
            action = [&](const json& p) { return cmd_evolve(evolve_args, p, out); };
        });
    }

    StabilityArgs stab;
    {
        auto [sub, f] = command("stability", "perturb the ground state and track the orbit distance");
        add_physics(*f, stab.physics);
        add_solver(*f, stab.solver);
        f->option("eps", stab.eps, "H-norm size of the perturbation")->required();
        f->option("time", stab.time, "final time T");
        f->option("dt", stab.dt, "time step");
        f->option("stride", stab.stride, "record every STRIDE steps");
        f->option("seed", stab.seed, "perturbation seed");
        f->option("max-ratio", stab.max_ratio, "fail unless sup distance / eps is below this");
        f->path("ground", stab.ground, "use this ground-state field instead of solving");
        f->path("out", stab.out, "output prefix");
        sub->callback([&, f = f] {
            params = f->parameters();
            action = [&](const json& p) { return cmd_stability(stab, p, out, err); };
        });
    }

    SweepArgs sweep;
    {
        auto [sub, f] = command("sweep", "ground energy d(m) on log-spaced masses");
        add_physics(*f, sweep.physics);
        add_solver(*f, sweep.solver);
        f->option("mass-min", sweep.mass_min, "smallest mass");
        f->option("mass-max", sweep.mass_max, "largest mass");
        f->option("count", sweep.count, "number of masses");
        f->path("out", sweep.out, "output prefix");
        sub->callback([&, f = f] {
            params = f->parameters();
            action = [&](const json& p) { return cmd_sweep(sweep, p, out, err); };
        });
    }

    CheckArgs check;
    {
        auto [sub, f] = command("check", "convexity trials and convolution cross-check");
        add_physics(*f, check.physics);
        f->option("trials", check.trials, "number of random density pairs");
        f->option("seed", check.seed, "first trial seed");
        f->path("out", check.out, "output prefix");
        sub->callback([&, f = f] {
            params = f->parameters();
            action = [&](const json& p) { return cmd_check(check, p, out, err); };
        });
    }

    std::string manifest;
    std::string replay_out;
    {
        auto* sub = app.add_subcommand("replay", "re-run the command recorded in a manifest");
        sub->add_option("manifest", manifest, "manifest file")->required();
        sub->add_option("--out", replay_out, "write outputs under this prefix instead");
        sub->callback([&] {
            params = json::object();
            action = [&](const json&) { return run(manifest_args(manifest, replay_out), out, err); };
        });
    }

    std::vector<const char*> argv{"hartree_lab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    active = app.get_subcommands().empty() ? std::string() : app.get_subcommands().front()->get_name();

    try {
        return action(params);
    } catch (const ConfigError& e) {
        err << "hartree_lab " << active << ": configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const FormatError& e) {
        err << "hartree_lab " << active << ": input error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvariantViolation& e) {
        err << "hartree_lab " << active << ": assertion failed: " << e.what() << '\n';
        return kAssertionFailed;
    } catch (const std::exception& e) {
        err << "hartree_lab " << active << ": error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace hartree::cli
