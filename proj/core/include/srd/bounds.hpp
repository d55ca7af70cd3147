#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "srd/model.hpp"
#include "srd/simulate.hpp"
#include "srd/stats.hpp"

// Closed-form evaluators for the growth and convergence-rate bounds and
// Monte Carlo estimators of the bounded quantities, combined into
// pass/fail certification reports.

namespace srd {

// Per-time comparison of an empirical quantity against a closed-form
// bound.  pass holds iff mean <= bound + z*stderr + budget at every time.
struct BoundReport {
    std::vector<double> times;
    std::vector<EstimateWithError> empirical;
    std::vector<double> bound;
    std::vector<double> slack_in_stderr;  // (bound - mean) / stderr
    std::vector<double> budget;           // extra one-sided allowance (discretization)
    double z = 3.0;
    bool pass = false;
    std::string label;

    static BoundReport build(std::vector<double> times, std::vector<EstimateWithError> empirical,
                             std::vector<double> bound, double z, std::vector<double> budget = {},
                             std::string label = {});

    // time, empirical_mean, stderr, bound, pass
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os, const std::string& params_tag,
                    std::uint64_t seed) const;
};

// E (sup_{s<=t} Z_s)^2 <= 2((x0 + a t)^2 + 2 sigma^2 t) e^{4 sigma^2 t};
// Gronwall route, valid for both phases, b-free.
double growth_bound_gronwall(const CirParams& p, double t);
double growth_bound_gronwall(const BesselSqParams& p, double t);

// Moment route for E sup (X + b int X)^2, requires b > 0:
// 2(x0+at)^2 + (8 sigma^2/b)(x0 - a/b)(1 - e^{-bt}) + (8 sigma^2 a / b) t.
double growth_bound_moment(const CirParams& p, double t);

// Upper and lower bounds for E sup Y^2 (the b = 0 phase).
std::pair<double, double> bessel_growth_bounds(const BesselSqParams& p, double t);

// sup_{t<=T} E|X_n - X_0| bound; branch selected by p0.b.
double rate_bound_l1(const CirParams& pn, const CirParams& p0, double horizon);

// sup_{t<=T} E(X_n - X_0)^2 via the distributional (third-moment) route.
double rate_bound_l2_distributional(const CirParams& pn, const CirParams& p0, double horizon);

// sup_{t<=T} E(X_n - X_0)^2 via the stochastic-analysis route.
double rate_bound_l2_pathwise(const CirParams& pn, const CirParams& p0, double horizon);

// int_0^T E X dt in closed form (A- or B-type depending on b).
double integrated_mean(const CirParams& p, double horizon);

// sup_{t<=T} E X^3 envelope used by the distributional route (continuous
// in b at 0).
double third_moment_sup_bound(const CirParams& p, double horizon);

// sup_{t<=T} E X^2 envelope (continuous in b at 0).
double second_moment_sup_bound(const CirParams& p, double horizon);

// Estimators over coupled ensembles (same grid, same seed required).
// Return the per-time MC mean of |difference| (resp. squared difference)
// maximized over the grid, with the standard error taken at the argmax.
std::pair<EstimateWithError, double> mc_sup_l1_distance(const PathEnsemble& e1,
                                                        const PathEnsemble& e2);
std::pair<EstimateWithError, double> mc_sup_l2_distance(const PathEnsemble& e1,
                                                        const PathEnsemble& e2);

// Per-time curve variants backing the BoundReport rows.
std::vector<EstimateWithError> mc_l1_distance_curve(const PathEnsemble& e1,
                                                    const PathEnsemble& e2);
std::vector<EstimateWithError> mc_l2_distance_curve(const PathEnsemble& e1,
                                                    const PathEnsemble& e2);

// MC mean of the grid supremum of (X + b int_0^s X du)^2 up to the
// ensemble horizon; trapezoid rule for the integral.  The grid sup
// lower-bounds the true sup, so "estimate <= bound" stays a valid
// necessary check.
EstimateWithError mc_sup_second_moment(const PathEnsemble& e, const CirParams& p);
EstimateWithError mc_sup_second_moment(const PathEnsemble& e, const BesselSqParams& p);

// Same statistic truncated at each requested time (grid points).
std::vector<EstimateWithError> mc_sup_second_moment_curve(const PathEnsemble& e,
                                                          const CirParams& p,
                                                          const std::vector<double>& times);

}  // namespace srd
