#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "srd/grid.hpp"
#include "srd/model.hpp"
#include "srd/rng.hpp"

// Samplers and path generation.  Exact transitions draw from the
// non-central chi-squared transition law (Poisson-mixed Gamma); coupled
// runs use a full-truncation Euler scheme so that several parameter sets
// can share one Wiener increment stream.  Results are a pure function of
// (seed, inputs), independent of worker count.

namespace srd {

// A matrix of simulated trajectories along one grid.  values is
// row-major: path index is the row, grid index the column.
class PathEnsemble {
  public:
    PathEnsemble(TimeGrid grid, std::size_t n_paths, std::string params_tag,
                 std::uint64_t seed);

    const TimeGrid& grid() const { return grid_; }
    std::size_t n_paths() const { return n_paths_; }
    std::size_t n_times() const { return grid_.size(); }
    const std::string& params_tag() const { return params_tag_; }
    std::uint64_t seed() const { return seed_; }

    double value(std::size_t path, std::size_t time_idx) const {
        return values_[path * grid_.size() + time_idx];
    }
    double& value(std::size_t path, std::size_t time_idx) {
        return values_[path * grid_.size() + time_idx];
    }
    std::span<const double> path(std::size_t i) const {
        return {values_.data() + i * grid_.size(), grid_.size()};
    }
    std::span<double> path(std::size_t i) {
        return {values_.data() + i * grid_.size(), grid_.size()};
    }
    const std::vector<double>& values() const { return values_; }

    // Column of terminal (or any fixed-time) values across paths.
    std::vector<double> column(std::size_t time_idx) const;

    // All entries finite; optionally also nonnegative (square-root
    // diffusions).  Throws on violation.
    void validate(bool require_nonneg) const;

    bool operator==(const PathEnsemble& other) const {
        return grid_ == other.grid_ && values_ == other.values_ && seed_ == other.seed_;
    }

    // header row of time points, then one row of values per path
    void write_csv(std::ostream& os) const;
    // magic "SRDE" | u32 version=1 | u64 seed | u64 n_paths | u64 n_times
    // | f64 times[n_times] | f64 values[n_paths*n_times] row-major,
    // little-endian throughout
    void write_binary(std::ostream& os) const;
    static PathEnsemble read_binary(std::istream& is);

  private:
    TimeGrid grid_;
    std::size_t n_paths_;
    std::string params_tag_;
    std::uint64_t seed_;
    std::vector<double> values_;
};

// One draw from the CIR transition law over dt started at x_from:
// Gamma(nu + 1 + P, scale c(dt)) with P ~ Poisson(x_from e^{-b dt}/c(dt)).
// Requires b > 0 (use the squared-Bessel variant for b = 0) and the
// Feller condition.
double cir_exact_transition(const CirParams& p, double x_from, double dt, PhiloxEngine& rng);

// Same with the b = 0 scale c = sigma^2 dt / 2.
double bessel_sq_exact_transition(const BesselSqParams& p, double y_from, double dt,
                                  PhiloxEngine& rng);

// Ensemble of exact-transition paths along the grid (dispatches on b).
PathEnsemble simulate_exact(const CirParams& p, const TimeGrid& grid, std::size_t n_paths,
                            std::uint64_t seed, unsigned workers = 0);
PathEnsemble simulate_exact(const BesselSqParams& p, const TimeGrid& grid, std::size_t n_paths,
                            std::uint64_t seed, unsigned workers = 0);

// Advance every parameter set with the same Gaussian increments
// (common random numbers) on a uniform grid, full-truncation Euler.
// All parameter sets must share the initial value.
std::vector<PathEnsemble> simulate_coupled(const std::vector<CirParams>& params,
                                           const TimeGrid& grid, std::size_t n_paths,
                                           std::uint64_t seed, unsigned workers = 0);

// Euler-Maruyama paths of dV = c/sqrt(V^2 + eps^2) dt + dW.  The drift
// is Lipschitz, values may be negative.  Increment k of path i is the
// same as in simulate_coupled for equal (seed, grid), so runs with
// different eps (or against a coupled ensemble) share their noise.
PathEnsemble simulate_smoothed_bessel(double eps, double c, double v0, const TimeGrid& grid,
                                      std::size_t n_paths, std::uint64_t seed,
                                      unsigned workers = 0);

// Terminal values only, without materializing the ensemble; identical
// draws to simulate_smoothed_bessel for equal arguments.  Long-horizon
// weak-limit experiments need this to stay within memory.
std::vector<double> simulate_smoothed_bessel_terminal(double eps, double c, double v0,
                                                      const TimeGrid& grid,
                                                      std::size_t n_paths, std::uint64_t seed,
                                                      unsigned workers = 0);

}  // namespace srd
