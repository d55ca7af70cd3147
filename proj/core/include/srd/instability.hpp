#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "srd/model.hpp"
#include "srd/simulate.hpp"
#include "srd/stats.hpp"

// Empirical stochastic-instability functionals: running time averages of
// occupancy probabilities, the analytic occupancy limit of the
// mean-reverting phase, and the weak-limit marginal for the smoothed
// process experiment.

namespace srd {

// The running average (1/t) int_0^t P(|xi_s| < N) ds at selected times.
struct OccupancyCurve {
    std::vector<double> times;
    std::vector<EstimateWithError> value;

    // time, mean, stderr, n plus embedded metadata columns
    void write_csv(std::ostream& os, double threshold, const std::string& params_tag,
                   std::uint64_t seed) const;
    void write_json(std::ostream& os, double threshold, const std::string& params_tag,
                    std::uint64_t seed) const;
};

// Per-path trapezoid time average of the indicator {|state| < N} up to
// each requested time (grid points, > 0), then mean/stderr across paths.
OccupancyCurve occupancy_average(const PathEnsemble& e, double threshold,
                                 const std::vector<double>& times);

// Limit of the occupancy average for the mean-reverting phase:
// P(2a/sigma^2, 2 b N / sigma^2).  Requires b > 0.
double cir_occupancy_limit(const CirParams& p, double threshold);

// CDF of |Y_t| where Y_t^2 ~ Gamma(3/2, scale 2t), i.e. |Y_t| = sqrt(t chi2_3).
double weak_limit_reference_cdf(double t, double x);

// Generalization for drift constant c: Y_t^2 ~ Gamma((2c+1)/2, scale 2t).
// The two-argument form is the c = 1 case.
double weak_limit_reference_cdf(double t, double x, double c);

// Two-sided Kolmogorov-Smirnov sup distance between the empirical CDF of
// the samples and a reference CDF.  Needs at least 10 samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// {n, statistic, threshold-free metadata} as JSON.
void write_ks_report(std::ostream& os, double statistic, std::size_t n,
                     const std::string& params_tag, std::uint64_t seed);

}  // namespace srd
