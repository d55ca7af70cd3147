// Command-line driver: simulation, densities, moments, bound
// certification, estimation and instability experiments, with flat
// key=value config files (flags win) and machine-readable outputs.
//
// Exit codes: 0 success, 1 runtime failure, 2 config/flag error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srd/bounds.hpp"
#include "srd/estimate.hpp"
#include "srd/grid.hpp"
#include "srd/instability.hpp"
#include "srd/model.hpp"
#include "srd/simulate.hpp"

namespace {

struct CommonOpts {
    std::uint64_t seed = 20240901;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::string out;
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "RNG seed (per-path substreams derive from it)");
    cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores); results do not depend on it");
    cmd->add_option("--out", c.out, "Output file path");
    cmd->add_option("--config", c.config,
                    "Flat key=value config file; command-line flags win, unknown keys are rejected");
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Expands `--config FILE` into per-key flags placed right after the
// subcommand, skipping keys the user already passed so that explicit
// flags win.  Unknown keys surface as unexpected-argument parse errors.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size()) config_path = tokens[i + 1];
        if (tokens[i].rfind("--config=", 0) == 0) config_path = tokens[i].substr(9);
    }
    if (config_path.empty()) return tokens;

    auto given_on_cli = [&](const std::string& key) {
        const std::string flag = "--" + key;
        for (const auto& t : tokens) {
            if (t == flag || t.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };

    std::ifstream is(config_path);
    if (!is) throw std::domain_error("cannot open config file: " + config_path);
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::domain_error("config line " + std::to_string(lineno) +
                                    ": expected key=value");
        }
        const std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
            value.back() == value.front()) {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw std::domain_error("config line " + std::to_string(lineno) + ": empty key");
        }
        if (key == "config") {
            throw std::domain_error("config files cannot set 'config'");
        }
        if (!given_on_cli(key)) injected.push_back("--" + key + "=" + value);
    }

    std::vector<std::string> out;
    bool inserted = false;
    for (const auto& t : tokens) {
        out.push_back(t);
        if (!inserted && !t.empty() && t[0] != '-') {  // the subcommand token
            out.insert(out.end(), injected.begin(), injected.end());
            inserted = true;
        }
    }
    if (!inserted) out.insert(out.end(), injected.begin(), injected.end());
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::string fmt(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

// Grid that passes exactly through every requested time, with steps
// growing geometrically between them.
srd::TimeGrid grid_through(const std::vector<double>& targets, double h0, double ratio) {
    std::vector<double> pts{0.0};
    double h = h0;
    for (double target : targets) {
        double t = pts.back();
        if (target <= t) throw std::domain_error("requested times must be increasing");
        while (t < target) {
            t = (t + h >= target) ? target : t + h;
            pts.push_back(t);
            h *= ratio;
        }
    }
    return srd::TimeGrid(std::move(pts));
}

struct ModelOpts {
    std::string model = "cir";
    double x0 = 1.0;
    double a = 2.0;
    double b = 1.0;
    double sigma = 1.0;
    double eps = 1.0;
    double c = 1.0;
};

void add_model(CLI::App* cmd, ModelOpts& m, bool with_smoothed) {
    std::string models = with_smoothed ? "cir, bessel or smoothed" : "cir or bessel";
    cmd->add_option("--model", m.model, "Process family: " + models)->capture_default_str();
    cmd->add_option("--x0", m.x0, "Initial value (x0 / y0 / v0)")->capture_default_str();
    cmd->add_option("--a", m.a, "Drift level a")->capture_default_str();
    cmd->add_option("--b", m.b, "Mean-reversion rate b (cir only)")->capture_default_str();
    cmd->add_option("--sigma", m.sigma, "Diffusion scale sigma")->capture_default_str();
    if (with_smoothed) {
        cmd->add_option("--eps", m.eps, "Smoothing parameter (smoothed only)")->capture_default_str();
        cmd->add_option("--c", m.c, "Drift constant c (smoothed only)")->capture_default_str();
    }
}

srd::CirParams cir_of(const ModelOpts& m) { return {m.x0, m.a, m.b, m.sigma}; }
srd::BesselSqParams bessel_of(const ModelOpts& m) { return {m.x0, m.a, m.sigma}; }

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    CommonOpts common;
    ModelOpts model;
    double horizon = 1.0;
    std::size_t n_steps = 256;
    std::size_t n_paths = 100;
    std::string scheme = "exact";
    std::string format = "csv";
};

int run_simulate(const SimulateOpts& o) {
    const srd::TimeGrid grid = srd::TimeGrid::uniform(o.horizon, o.n_steps);
    std::optional<srd::PathEnsemble> ens;
    if (o.model.model == "smoothed") {
        ens = srd::simulate_smoothed_bessel(o.model.eps, o.model.c, o.model.x0, grid, o.n_paths,
                                            o.common.seed, o.common.workers);
    } else if (o.model.model == "cir" || o.model.model == "bessel") {
        const srd::CirParams p =
            o.model.model == "bessel" ? bessel_of(o.model).as_cir() : cir_of(o.model);
        if (o.scheme == "exact") {
            ens = srd::simulate_exact(p, grid, o.n_paths, o.common.seed, o.common.workers);
        } else if (o.scheme == "euler") {
            ens = std::move(
                srd::simulate_coupled({p}, grid, o.n_paths, o.common.seed, o.common.workers)
                    .front());
        } else {
            throw std::domain_error("unknown --scheme: " + o.scheme);
        }
        ens->validate(true);
    } else {
        throw std::domain_error("unknown --model: " + o.model.model);
    }

    std::cout << "seed=" << o.common.seed << " paths=" << o.n_paths
              << " times=" << grid.size() << " tag=" << ens->params_tag() << "\n";
    if (o.common.out.empty()) throw std::domain_error("simulate requires --out");
    if (o.format == "csv") {
        auto os = open_out(o.common.out);
        ens->write_csv(os);
    } else if (o.format == "bin") {
        auto os = open_out(o.common.out);
        ens->write_binary(os);
    } else if (o.format == "both") {
        auto os = open_out(o.common.out);
        ens->write_csv(os);
        auto ob = open_out(o.common.out + ".bin");
        ens->write_binary(ob);
    } else {
        throw std::domain_error("unknown --format: " + o.format);
    }
    return 0;
}

// ---------------------------------------------------------------- density

struct DensityOpts {
    CommonOpts common;
    ModelOpts model;
    double t = 1.0;
    double x_min = 0.0;
    double x_max = 8.0;
    std::size_t n_points = 200;
    bool stationary = false;
};

int run_density(const DensityOpts& o) {
    auto eval = [&](double x) -> double {
        if (o.model.model == "bessel") return srd::bessel_sq_density(bessel_of(o.model), o.t, x);
        if (o.stationary) return srd::cir_stationary_density(cir_of(o.model), x);
        return srd::cir_density(cir_of(o.model), o.t, x);
    };
    if (o.model.model != "cir" && o.model.model != "bessel") {
        throw std::domain_error("density supports --model cir or bessel");
    }
    if (o.stationary && o.model.model != "cir") {
        throw std::domain_error("--stationary requires --model cir (no stationary law at b = 0)");
    }
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    if (!o.common.out.empty()) {
        file = std::make_unique<std::ofstream>(open_out(o.common.out));
        os = file.get();
    }
    const bool machine = file != nullptr;
    const int digits = machine ? 17 : 6;
    *os << "x,density\n";
    for (std::size_t i = 0; i < o.n_points; ++i) {
        const double x = o.x_min + (o.x_max - o.x_min) * static_cast<double>(i) /
                                       static_cast<double>(o.n_points - 1);
        *os << fmt(x, digits) << ',' << fmt(eval(x), digits) << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- moments

struct MomentsOpts {
    CommonOpts common;
    ModelOpts model;
    std::vector<double> times{0.5, 1.0, 2.0};
    std::size_t mc_paths = 0;
};

int run_moments(const MomentsOpts& o) {
    const bool is_bessel = o.model.model == "bessel";
    if (!is_bessel && o.model.model != "cir") {
        throw std::domain_error("moments supports --model cir or bessel");
    }
    auto closed = [&](double t, int k) {
        return is_bessel ? srd::bessel_sq_moment(bessel_of(o.model), t, k)
                         : srd::cir_moment(cir_of(o.model), t, k);
    };

    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;
    if (!o.common.out.empty()) {
        file = std::make_unique<std::ofstream>(open_out(o.common.out));
        os = file.get();
    }
    const int digits = file ? 17 : 6;

    *os << "t,m1,m2,m3";
    if (o.mc_paths > 0) *os << ",mc1,mc1_se,mc2,mc2_se,mc3,mc3_se";
    *os << '\n';
    for (double t : o.times) {
        *os << fmt(t, digits);
        for (int k = 1; k <= 3; ++k) *os << ',' << fmt(closed(t, k), digits);
        if (o.mc_paths > 0) {
            const srd::CirParams p = is_bessel ? bessel_of(o.model).as_cir() : cir_of(o.model);
            const srd::TimeGrid grid(std::vector<double>{0.0, t});
            const auto ens =
                srd::simulate_exact(p, grid, o.mc_paths, o.common.seed, o.common.workers);
            const auto terminal = ens.column(1);
            std::vector<double> powered(terminal.size());
            for (int k = 1; k <= 3; ++k) {
                for (std::size_t i = 0; i < terminal.size(); ++i) {
                    powered[i] = std::pow(terminal[i], k);
                }
                const auto est = srd::EstimateWithError::from_samples(powered);
                *os << ',' << fmt(est.mean, digits) << ',' << fmt(est.stderr_, digits);
            }
        }
        *os << '\n';
    }
    return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsOpts {
    CommonOpts common;
    ModelOpts model;   // reference/limit model p0 (b is p0's rate)
    std::string kind = "rate-l1";
    std::vector<double> bn{0.5, 0.2, 0.1, 0.05};
    double horizon = 1.0;
    std::size_t n_steps = 1024;
    std::size_t n_paths = 10000;
    std::size_t n_report = 8;
    double z = 3.0;
};

int run_bounds(const BoundsOpts& o) {
    if (o.common.out.empty()) throw std::domain_error("bounds requires --out");
    const double T = o.horizon;

    if (o.kind == "growth") {
        // Certify the grid-sup functional against the moment-route bound
        // (b > 0) or the b = 0 upper bound, plus the Gronwall envelope.
        const srd::CirParams p = cir_of(o.model);
        const srd::TimeGrid grid = srd::TimeGrid::uniform(T, o.n_steps);
        const auto ens =
            srd::simulate_coupled({p}, grid, o.n_paths, o.common.seed, o.common.workers);
        std::vector<double> report_times;
        for (std::size_t i = 1; i <= o.n_report; ++i) {
            report_times.push_back(grid[i * o.n_steps / o.n_report]);
        }
        const auto curve = srd::mc_sup_second_moment_curve(ens.front(), p, report_times);
        std::vector<double> bound;
        for (double t : report_times) {
            bound.push_back(p.b > 0.0 ? srd::growth_bound_moment(p, t)
                                      : srd::bessel_growth_bounds(p.as_bessel_sq(), t).first);
        }
        const auto report = srd::BoundReport::build(report_times, curve, std::move(bound), o.z,
                                                    {}, "growth:" + p.describe());
        auto os = open_out(o.common.out);
        report.write_csv(os);
        auto oj = open_out(o.common.out + ".json");
        report.write_json(oj, p.describe(), o.common.seed);
        std::cout << "seed=" << o.common.seed << " pass=" << (report.pass ? 1 : 0) << "\n";
        return report.pass ? 0 : 1;
    }

    const bool l1 = o.kind == "rate-l1";
    const bool l2d = o.kind == "rate-l2-dist";
    const bool l2p = o.kind == "rate-l2-path";
    if (!l1 && !l2d && !l2p) throw std::domain_error("unknown --kind: " + o.kind);

    const srd::CirParams p0 = cir_of(o.model);
    std::vector<srd::CirParams> family{p0};
    for (double b : o.bn) family.emplace_back(p0.x0, p0.a, b, p0.sigma);
    const srd::TimeGrid grid = srd::TimeGrid::uniform(T, o.n_steps);
    const auto ens = srd::simulate_coupled(family, grid, o.n_paths, o.common.seed,
                                           o.common.workers);

    std::vector<double> report_times;
    for (std::size_t i = 1; i <= o.n_report; ++i) {
        report_times.push_back(grid[i * o.n_steps / o.n_report]);
    }

    bool all_pass = true;
    for (std::size_t m = 1; m < family.size(); ++m) {
        const auto curve = l1 ? srd::mc_l1_distance_curve(ens[0], ens[m])
                              : srd::mc_l2_distance_curve(ens[0], ens[m]);
        std::vector<srd::EstimateWithError> emp;
        std::vector<double> bound;
        for (double t : report_times) {
            // running sup of the per-time curve up to t
            srd::EstimateWithError sup = curve[0];
            for (std::size_t j = 0; j <= grid.index_of(t); ++j) {
                if (curve[j].mean > sup.mean) sup = curve[j];
            }
            emp.push_back(sup);
            bound.push_back(l1 ? srd::rate_bound_l1(family[m], p0, t)
                       : l2d  ? srd::rate_bound_l2_distributional(family[m], p0, t)
                              : srd::rate_bound_l2_pathwise(family[m], p0, t));
        }
        char label[64];
        std::snprintf(label, sizeof(label), "%s:bn=%g", o.kind.c_str(), family[m].b);
        const auto report =
            srd::BoundReport::build(report_times, std::move(emp), std::move(bound), o.z, {}, label);
        all_pass = all_pass && report.pass;
        char suffix[48];
        std::snprintf(suffix, sizeof(suffix), "_bn%g", family[m].b);
        auto os = open_out(o.common.out + suffix + ".csv");
        report.write_csv(os);
        auto oj = open_out(o.common.out + suffix + ".json");
        report.write_json(oj, family[m].describe() + " vs " + p0.describe(), o.common.seed);
        std::cout << "bn=" << family[m].b << " pass=" << (report.pass ? 1 : 0) << "\n";
    }
    std::cout << "seed=" << o.common.seed << " pass=" << (all_pass ? 1 : 0) << "\n";
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------- estimate

struct EstimateOpts {
    CommonOpts common;
    ModelOpts model;
    std::string input;
    double horizon = 100.0;
    double step = 0.01;
    double sigma_known = 0.0;  // 0 = plug in sqrt of the QV estimate
};

int run_estimate(const EstimateOpts& o) {
    std::optional<srd::DiscreteTrajectory> traj;
    if (!o.input.empty()) {
        std::ifstream is(o.input);
        if (!is) throw std::domain_error("cannot open trajectory CSV: " + o.input);
        traj = srd::DiscreteTrajectory::read_csv(is);
    } else {
        const srd::CirParams p =
            o.model.model == "bessel" ? bessel_of(o.model).as_cir() : cir_of(o.model);
        const auto n_steps = static_cast<std::size_t>(std::llround(o.horizon / o.step));
        const srd::TimeGrid grid = srd::TimeGrid::uniform(o.horizon, n_steps);
        const auto ens = srd::simulate_exact(p, grid, 1, o.common.seed, 1);
        traj = srd::DiscreteTrajectory(grid, std::vector<double>(ens.path(0).begin(),
                                                                 ens.path(0).end()));
    }
    const double sigma2 = srd::sigma2_qv(*traj);
    const double sigma = o.sigma_known > 0.0 ? o.sigma_known : std::sqrt(sigma2);
    const double theta = srd::mle_theta(*traj, sigma);
    const double a_hat = srd::mle_a(*traj, sigma);
    if (o.common.out.empty()) {
        srd::write_estimate_report(std::cout, sigma2, theta, a_hat, traj->horizon(),
                                   traj->size());
    } else {
        auto os = open_out(o.common.out);
        srd::write_estimate_report(os, sigma2, theta, a_hat, traj->horizon(), traj->size());
    }
    return 0;
}

// ---------------------------------------------------------------- instability

struct InstabilityOpts {
    CommonOpts common;
    ModelOpts model;
    double threshold = 2.0;
    std::vector<double> times{100.0, 1000.0, 10000.0};
    double h0 = 0.05;
    double ratio = 1.005;
    std::size_t n_paths = 2000;
};

int run_instability(const InstabilityOpts& o) {
    if (o.common.out.empty()) throw std::domain_error("instability requires --out");
    const srd::TimeGrid grid = grid_through(o.times, o.h0, o.ratio);
    std::optional<srd::PathEnsemble> ens;
    std::optional<double> limit;
    if (o.model.model == "smoothed") {
        ens = srd::simulate_smoothed_bessel(o.model.eps, o.model.c, o.model.x0, grid, o.n_paths,
                                            o.common.seed, o.common.workers);
    } else if (o.model.model == "cir") {
        const srd::CirParams p = cir_of(o.model);
        ens = srd::simulate_exact(p, grid, o.n_paths, o.common.seed, o.common.workers);
        limit = srd::cir_occupancy_limit(p, o.threshold);
    } else if (o.model.model == "bessel") {
        ens = srd::simulate_exact(bessel_of(o.model), grid, o.n_paths, o.common.seed,
                                  o.common.workers);
    } else {
        throw std::domain_error("unknown --model: " + o.model.model);
    }
    const auto curve = srd::occupancy_average(*ens, o.threshold, o.times);
    auto os = open_out(o.common.out);
    curve.write_csv(os, o.threshold, ens->params_tag(), o.common.seed);
    auto oj = open_out(o.common.out + ".json");
    curve.write_json(oj, o.threshold, ens->params_tag(), o.common.seed);
    std::cout << "seed=" << o.common.seed;
    if (limit) std::cout << " occupancy_limit=" << fmt(*limit, 6);
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        std::cout << " t" << curve.times[i] << "=" << fmt(curve.value[i].mean, 6);
    }
    std::cout << "\n";
    return 0;
}

// ---------------------------------------------------------------- limit

struct LimitOpts {
    CommonOpts common;
    double eps = 1.0;
    double c = 1.0;
    double v0 = 1.0;
    double horizon = 10000.0;
    double h0 = 0.01;
    double ratio = 1.001;
    std::size_t n_paths = 10000;
};

int run_limit(const LimitOpts& o) {
    const srd::TimeGrid grid = grid_through({o.horizon}, o.h0, o.ratio);
    std::vector<double> samples = srd::simulate_smoothed_bessel_terminal(
        o.eps, o.c, o.v0, grid, o.n_paths, o.common.seed, o.common.workers);
    const double scale = std::sqrt(o.horizon);
    for (double& s : samples) s = std::fabs(s) / scale;
    const double drift_c = o.c;  // reference marginal carries the (2c+1) drift
    const double ks = srd::ks_statistic(
        samples, [drift_c](double x) { return srd::weak_limit_reference_cdf(1.0, x, drift_c); });
    char tag[96];
    std::snprintf(tag, sizeof(tag), "smoothed_bessel(eps=%g,c=%g,v0=%g)", o.eps, o.c, o.v0);
    if (o.common.out.empty()) {
        srd::write_ks_report(std::cout, ks, samples.size(), tag, o.common.seed);
    } else {
        auto os = open_out(o.common.out);
        srd::write_ks_report(os, ks, samples.size(), tag, o.common.seed);
        std::cout << "seed=" << o.common.seed << " ks=" << fmt(ks, 6) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for square-root diffusions: exact sampling, "
                 "closed-form moments and bounds, drift/diffusion estimation, and "
                 "instability diagnostics"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* c_sim = app.add_subcommand("simulate", "Generate a path ensemble (CSV/binary)");
    add_common(c_sim, sim.common);
    add_model(c_sim, sim.model, true);
    c_sim->add_option("--T", sim.horizon, "Horizon")->capture_default_str();
    c_sim->add_option("--n-steps", sim.n_steps, "Number of uniform steps")->capture_default_str();
    c_sim->add_option("--n-paths", sim.n_paths, "Number of paths")->capture_default_str();
    c_sim->add_option("--scheme", sim.scheme, "exact or euler")->capture_default_str();
    c_sim->add_option("--format", sim.format, "csv, bin or both")->capture_default_str();

    DensityOpts den;
    auto* c_den = app.add_subcommand("density", "Tabulate a transition/stationary density");
    add_common(c_den, den.common);
    add_model(c_den, den.model, false);
    c_den->add_option("--t", den.t, "Time point")->capture_default_str();
    c_den->add_option("--x-min", den.x_min)->capture_default_str();
    c_den->add_option("--x-max", den.x_max)->capture_default_str();
    c_den->add_option("--n-points", den.n_points)->capture_default_str();
    c_den->add_flag("--stationary", den.stationary, "Stationary density instead of p_t");

    MomentsOpts mom;
    auto* c_mom = app.add_subcommand("moments", "Closed-form moments, optionally vs Monte Carlo");
    add_common(c_mom, mom.common);
    add_model(c_mom, mom.model, false);
    c_mom->add_option("--t", mom.times, "Time points")->capture_default_str();
    c_mom->add_option("--mc", mom.mc_paths, "Exact-sampler paths for MC columns (0 = off)")
        ->capture_default_str();

    BoundsOpts bnd;
    auto* c_bnd = app.add_subcommand("bounds", "Certify growth/rate bounds by Monte Carlo");
    add_common(c_bnd, bnd.common);
    add_model(c_bnd, bnd.model, false);
    c_bnd->add_option("--kind", bnd.kind, "growth, rate-l1, rate-l2-dist or rate-l2-path")
        ->capture_default_str();
    c_bnd->add_option("--bn", bnd.bn, "Approximating mean-reversion rates")->capture_default_str();
    c_bnd->add_option("--T", bnd.horizon, "Horizon")->capture_default_str();
    c_bnd->add_option("--n-steps", bnd.n_steps, "Euler steps")->capture_default_str();
    c_bnd->add_option("--n-paths", bnd.n_paths, "Paths")->capture_default_str();
    c_bnd->add_option("--n-report", bnd.n_report, "Report rows")->capture_default_str();
    c_bnd->add_option("--z", bnd.z, "MC allowance multiplier")->capture_default_str();

    EstimateOpts est;
    auto* c_est = app.add_subcommand("estimate", "sigma^2 by realized QV and drift MLE");
    add_common(c_est, est.common);
    add_model(c_est, est.model, false);
    c_est->add_option("--input", est.input, "Trajectory CSV (t,value); simulates when absent");
    c_est->add_option("--T", est.horizon, "Horizon when simulating")->capture_default_str();
    c_est->add_option("--step", est.step, "Observation step")->capture_default_str();
    c_est->add_option("--sigma-known", est.sigma_known,
                      "Use this sigma in the MLE instead of the QV plug-in")
        ->capture_default_str();

    InstabilityOpts ins;
    auto* c_ins = app.add_subcommand("instability", "Occupancy time-averages");
    add_common(c_ins, ins.common);
    add_model(c_ins, ins.model, true);
    c_ins->add_option("--N", ins.threshold, "Occupancy threshold")->capture_default_str();
    c_ins->add_option("--times", ins.times, "Report times")->capture_default_str();
    c_ins->add_option("--h0", ins.h0, "Initial grid step")->capture_default_str();
    c_ins->add_option("--ratio", ins.ratio, "Geometric step growth")->capture_default_str();
    c_ins->add_option("--n-paths", ins.n_paths, "Paths")->capture_default_str();

    LimitOpts lim;
    auto* c_lim = app.add_subcommand("limit", "Weak-limit KS experiment for the smoothed process");
    add_common(c_lim, lim.common);
    c_lim->add_option("--eps", lim.eps, "Smoothing parameter")->capture_default_str();
    c_lim->add_option("--c", lim.c, "Drift constant")->capture_default_str();
    c_lim->add_option("--v0", lim.v0, "Initial value")->capture_default_str();
    c_lim->add_option("--T", lim.horizon, "Horizon")->capture_default_str();
    c_lim->add_option("--h0", lim.h0, "Initial grid step")->capture_default_str();
    c_lim->add_option("--ratio", lim.ratio, "Geometric step growth")->capture_default_str();
    c_lim->add_option("--n-paths", lim.n_paths, "Paths")->capture_default_str();

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants reversed args
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // exits 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_sim) return run_simulate(sim);
        if (*c_den) return run_density(den);
        if (*c_mom) return run_moments(mom);
        if (*c_bnd) return run_bounds(bnd);
        if (*c_est) return run_estimate(est);
        if (*c_ins) return run_instability(ins);
        if (*c_lim) return run_limit(lim);
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
