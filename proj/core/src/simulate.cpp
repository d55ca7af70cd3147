#include "srd/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "parallel.hpp"

namespace srd {

namespace {

void require_feller(bool ok) {
    if (!ok) throw std::domain_error("simulation requires the Feller condition 2a >= sigma^2");
}

// Poisson-mixed Gamma draw of the non-central transition:
// shape nu+1+P, scale c, P ~ Poisson(center/c).
double noncentral_draw(double nu, double c, double center, PhiloxEngine& rng) {
    std::int64_t extra = 0;
    if (center > 0.0) {
        std::poisson_distribution<std::int64_t> pois(center / c);
        extra = pois(rng);
    }
    std::gamma_distribution<double> gamma(nu + 1.0 + static_cast<double>(extra), c);
    return gamma(rng);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_pod(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!is) throw std::runtime_error("truncated ensemble binary");
    return v;
}

}  // namespace

PathEnsemble::PathEnsemble(TimeGrid grid, std::size_t n_paths, std::string params_tag,
                           std::uint64_t seed)
    : grid_(std::move(grid)),
      n_paths_(n_paths),
      params_tag_(std::move(params_tag)),
      seed_(seed),
      values_(n_paths * grid_.size(), 0.0) {
    if (n_paths == 0) throw std::invalid_argument("PathEnsemble needs at least one path");
}

std::vector<double> PathEnsemble::column(std::size_t time_idx) const {
    std::vector<double> out(n_paths_);
    for (std::size_t i = 0; i < n_paths_; ++i) out[i] = value(i, time_idx);
    return out;
}

void PathEnsemble::validate(bool require_nonneg) const {
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::runtime_error("ensemble contains a non-finite value");
        if (require_nonneg && v < 0.0) {
            throw std::runtime_error("ensemble contains a negative value");
        }
    }
}

void PathEnsemble::write_csv(std::ostream& os) const {
    char buf[32];
    const auto& t = grid_.points();
    for (std::size_t j = 0; j < t.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", t[j]);
        os << (j ? "," : "") << buf;
    }
    os << '\n';
    for (std::size_t i = 0; i < n_paths_; ++i) {
        const auto row = path(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            os << (j ? "," : "") << buf;
        }
        os << '\n';
    }
}

void PathEnsemble::write_binary(std::ostream& os) const {
    os.write("SRDE", 4);
    write_u32(os, 1u);
    write_u64(os, seed_);
    write_u64(os, n_paths_);
    write_u64(os, grid_.size());
    for (double t : grid_.points()) write_f64(os, t);
    for (double v : values_) write_f64(os, v);
}

PathEnsemble PathEnsemble::read_binary(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "SRDE", 4) != 0) {
        throw std::runtime_error("not an ensemble binary (bad magic)");
    }
    const auto version = read_pod<std::uint32_t>(is);
    if (version != 1u) throw std::runtime_error("unsupported ensemble binary version");
    const auto seed = read_pod<std::uint64_t>(is);
    const auto n_paths = read_pod<std::uint64_t>(is);
    const auto n_times = read_pod<std::uint64_t>(is);
    if (n_paths == 0 || n_paths > (1u << 30) || n_times < 2 || n_times > (1u << 30)) {
        throw std::runtime_error("ensemble binary has implausible dimensions");
    }
    std::vector<double> times(n_times);
    for (auto& t : times) t = read_pod<double>(is);
    PathEnsemble e(TimeGrid(std::move(times)), n_paths, "loaded", seed);
    for (std::size_t i = 0; i < n_paths; ++i) {
        for (std::size_t j = 0; j < n_times; ++j) e.value(i, j) = read_pod<double>(is);
    }
    return e;
}

double cir_exact_transition(const CirParams& p, double x_from, double dt, PhiloxEngine& rng) {
    if (p.b == 0.0) {
        throw std::domain_error("cir_exact_transition: b = 0, use bessel_sq_exact_transition");
    }
    require_feller(p.feller());
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::domain_error("dt must be > 0");
    if (!(x_from >= 0.0) || !std::isfinite(x_from)) throw std::domain_error("x_from must be >= 0");
    const double c = transition_scale(p, dt);
    return noncentral_draw(p.nu(), c, x_from * std::exp(-p.b * dt), rng);
}

double bessel_sq_exact_transition(const BesselSqParams& p, double y_from, double dt,
                                  PhiloxEngine& rng) {
    require_feller(p.feller());
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::domain_error("dt must be > 0");
    if (!(y_from >= 0.0) || !std::isfinite(y_from)) throw std::domain_error("y_from must be >= 0");
    return noncentral_draw(p.nu(), 0.5 * p.sigma * p.sigma * dt, y_from, rng);
}

namespace {

PathEnsemble simulate_exact_impl(const CirParams& p, const std::string& tag,
                                 const TimeGrid& grid, std::size_t n_paths,
                                 std::uint64_t seed, unsigned workers) {
    require_feller(p.feller());
    PathEnsemble out(grid, n_paths, tag, seed);
    const auto& t = grid.points();
    detail::parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxEngine rng(seed, i);
            auto row = out.path(i);
            row[0] = p.x0;
            if (p.b > 0.0) {
                for (std::size_t j = 1; j < t.size(); ++j) {
                    row[j] = cir_exact_transition(p, row[j - 1], t[j] - t[j - 1], rng);
                }
            } else {
                const BesselSqParams bp = p.as_bessel_sq();
                for (std::size_t j = 1; j < t.size(); ++j) {
                    row[j] = bessel_sq_exact_transition(bp, row[j - 1], t[j] - t[j - 1], rng);
                }
            }
        }
    });
    return out;
}

}  // namespace

PathEnsemble simulate_exact(const CirParams& p, const TimeGrid& grid, std::size_t n_paths,
                            std::uint64_t seed, unsigned workers) {
    return simulate_exact_impl(p, p.describe(), grid, n_paths, seed, workers);
}

PathEnsemble simulate_exact(const BesselSqParams& p, const TimeGrid& grid, std::size_t n_paths,
                            std::uint64_t seed, unsigned workers) {
    return simulate_exact_impl(p.as_cir(), p.describe(), grid, n_paths, seed, workers);
}

std::vector<PathEnsemble> simulate_coupled(const std::vector<CirParams>& params,
                                           const TimeGrid& grid, std::size_t n_paths,
                                           std::uint64_t seed, unsigned workers) {
    if (params.empty()) throw std::invalid_argument("simulate_coupled: empty parameter list");
    if (!grid.uniform_step()) {
        throw std::invalid_argument("simulate_coupled requires a uniform grid");
    }
    for (const auto& p : params) {
        require_feller(p.feller());
        if (p.x0 != params.front().x0) {
            throw std::invalid_argument("simulate_coupled: all models must share x0");
        }
    }
    const double dt = *grid.uniform_step();
    const double sqrt_dt = std::sqrt(dt);
    const std::size_t n_models = params.size();
    const std::size_t n_times = grid.size();

    std::vector<PathEnsemble> out;
    out.reserve(n_models);
    for (const auto& p : params) out.emplace_back(grid, n_paths, p.describe(), seed);

    detail::parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
        std::vector<double> state(n_models);
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxEngine rng(seed, i);
            for (std::size_t m = 0; m < n_models; ++m) {
                state[m] = params[m].x0;
                out[m].value(i, 0) = state[m];
            }
            for (std::size_t j = 1; j < n_times; ++j) {
                const double dw = rng.normal() * sqrt_dt;
                for (std::size_t m = 0; m < n_models; ++m) {
                    const auto& p = params[m];
                    const double x = state[m];  // kept >= 0 by the truncation below
                    double next = x + (p.a - p.b * x) * dt + p.sigma * std::sqrt(x) * dw;
                    if (next < 0.0) next = 0.0;
                    state[m] = next;
                    out[m].value(i, j) = next;
                }
            }
        }
    });
    return out;
}

namespace {

void check_smoothed_args(double eps, double c, double v0) {
    if (eps == 0.0 || !std::isfinite(eps)) throw std::domain_error("eps must be nonzero");
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::domain_error("c must be >= 0");
    if (!(v0 > 0.0) || !std::isfinite(v0)) throw std::domain_error("v0 must be > 0");
}

std::string smoothed_tag(double eps, double c, double v0) {
    char tag[96];
    std::snprintf(tag, sizeof(tag), "smoothed_bessel(eps=%g,c=%g,v0=%g)", eps, c, v0);
    return tag;
}

}  // namespace

PathEnsemble simulate_smoothed_bessel(double eps, double c, double v0, const TimeGrid& grid,
                                      std::size_t n_paths, std::uint64_t seed,
                                      unsigned workers) {
    check_smoothed_args(eps, c, v0);
    PathEnsemble out(grid, n_paths, smoothed_tag(eps, c, v0), seed);
    const auto& t = grid.points();
    const double eps2 = eps * eps;
    detail::parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxEngine rng(seed, i);
            auto row = out.path(i);
            double v = v0;
            row[0] = v;
            for (std::size_t j = 1; j < t.size(); ++j) {
                const double h = t[j] - t[j - 1];
                const double dw = rng.normal() * std::sqrt(h);
                v += c / std::sqrt(v * v + eps2) * h + dw;
                row[j] = v;
            }
        }
    });
    return out;
}

std::vector<double> simulate_smoothed_bessel_terminal(double eps, double c, double v0,
                                                      const TimeGrid& grid,
                                                      std::size_t n_paths, std::uint64_t seed,
                                                      unsigned workers) {
    check_smoothed_args(eps, c, v0);
    std::vector<double> out(n_paths);
    const auto& t = grid.points();
    const double eps2 = eps * eps;
    detail::parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PhiloxEngine rng(seed, i);
            double v = v0;
            for (std::size_t j = 1; j < t.size(); ++j) {
                const double h = t[j] - t[j - 1];
                v += c / std::sqrt(v * v + eps2) * h + rng.normal() * std::sqrt(h);
            }
            out[i] = v;
        }
    });
    return out;
}

}  // namespace srd
