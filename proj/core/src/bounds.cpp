#include "srd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace srd {

namespace {

void check_horizon(double t) {
    if (!std::isfinite(t) || t < 0.0) throw std::domain_error("time must be >= 0 and finite");
}

// psi(z) = (1 - e^{-z}) / z and phi(z) = (z - (1 - e^{-z})) / z^2,
// continuous at 0 with psi(0) = 1, phi(0) = 1/2.  Every bound that
// divides by b is expressed through them, which keeps the formulas
// stable for small b and exact in the b = 0 limit.
double psi(double z) {
    if (z == 0.0) return 1.0;
    return -std::expm1(-z) / z;
}

double phi(double z) {
    if (z < 0.01) {
        return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0 + z * z * z * z / 720.0;
    }
    return (z + std::expm1(-z)) / (z * z);
}

double gronwall(double x0, double a, double sigma, double t) {
    check_horizon(t);
    const double s2 = sigma * sigma;
    return 2.0 * ((x0 + a * t) * (x0 + a * t) + 2.0 * s2 * t) * std::exp(4.0 * s2 * t);
}

void require_coupled(const PathEnsemble& e1, const PathEnsemble& e2) {
    if (!(e1.grid() == e2.grid())) {
        throw std::invalid_argument("ensembles are on different grids");
    }
    if (e1.seed() != e2.seed()) {
        throw std::invalid_argument("ensembles are not coupled (different seeds)");
    }
    if (e1.n_paths() != e2.n_paths()) {
        throw std::invalid_argument("ensembles have different path counts");
    }
}

std::vector<EstimateWithError> distance_curve(const PathEnsemble& e1, const PathEnsemble& e2,
                                              bool squared) {
    require_coupled(e1, e2);
    const std::size_t n_paths = e1.n_paths();
    const std::size_t n_times = e1.n_times();
    std::vector<EstimateWithError> out(n_times);
    std::vector<double> samples(n_paths);
    for (std::size_t j = 0; j < n_times; ++j) {
        for (std::size_t i = 0; i < n_paths; ++i) {
            const double d = std::fabs(e1.value(i, j) - e2.value(i, j));
            samples[i] = squared ? d * d : d;
        }
        out[j] = EstimateWithError::from_samples(samples);
    }
    return out;
}

std::pair<EstimateWithError, double> sup_of_curve(const std::vector<EstimateWithError>& curve,
                                                  const TimeGrid& grid) {
    std::size_t arg = 0;
    for (std::size_t j = 1; j < curve.size(); ++j) {
        if (curve[j].mean > curve[arg].mean) arg = j;
    }
    return {curve[arg], grid[arg]};
}

}  // namespace

BoundReport BoundReport::build(std::vector<double> times,
                               std::vector<EstimateWithError> empirical,
                               std::vector<double> bound, double z, std::vector<double> budget,
                               std::string label) {
    if (times.size() != empirical.size() || times.size() != bound.size()) {
        throw std::invalid_argument("BoundReport: mismatched column lengths");
    }
    if (budget.empty()) budget.assign(times.size(), 0.0);
    if (budget.size() != times.size()) {
        throw std::invalid_argument("BoundReport: mismatched budget length");
    }
    BoundReport r;
    r.times = std::move(times);
    r.empirical = std::move(empirical);
    r.bound = std::move(bound);
    r.budget = std::move(budget);
    r.z = z;
    r.label = std::move(label);
    r.slack_in_stderr.resize(r.times.size());
    r.pass = true;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const auto& est = r.empirical[i];
        const double se = est.stderr_ > 0.0 ? est.stderr_ : std::numeric_limits<double>::min();
        r.slack_in_stderr[i] = (r.bound[i] - est.mean) / se;
        if (!(est.mean <= r.bound[i] + z * est.stderr_ + r.budget[i])) r.pass = false;
    }
    return r;
}

void BoundReport::write_csv(std::ostream& os) const {
    os << "time,empirical_mean,stderr,bound,pass\n";
    char buf[128];
    for (std::size_t i = 0; i < times.size(); ++i) {
        const bool row_pass =
            empirical[i].mean <= bound[i] + z * empirical[i].stderr_ + budget[i];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d\n", times[i],
                      empirical[i].mean, empirical[i].stderr_, bound[i], row_pass ? 1 : 0);
        os << buf;
    }
}

void BoundReport::write_json(std::ostream& os, const std::string& params_tag,
                             std::uint64_t seed) const {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["params"] = params_tag;
    j["seed"] = seed;
    j["z"] = z;
    j["pass"] = pass;
    j["times"] = times;
    std::vector<double> means, errs, ns;
    for (const auto& e : empirical) {
        means.push_back(e.mean);
        errs.push_back(e.stderr_);
        ns.push_back(static_cast<double>(e.n));
    }
    j["empirical_mean"] = means;
    j["stderr"] = errs;
    j["n"] = ns;
    j["bound"] = bound;
    j["budget"] = budget;
    j["slack_in_stderr"] = slack_in_stderr;
    os << j.dump(2) << '\n';
}

double growth_bound_gronwall(const CirParams& p, double t) {
    return gronwall(p.x0, p.a, p.sigma, t);
}
double growth_bound_gronwall(const BesselSqParams& p, double t) {
    return gronwall(p.y0, p.a, p.sigma, t);
}

double growth_bound_moment(const CirParams& p, double t) {
    check_horizon(t);
    if (p.b <= 0.0) throw std::domain_error("growth_bound_moment requires b > 0");
    const double s2 = p.sigma * p.sigma;
    const double z = p.b * t;
    return 2.0 * (p.x0 + p.a * t) * (p.x0 + p.a * t) +
           8.0 * s2 * (p.x0 * t * psi(z) + p.a * t * t * phi(z));
}

std::pair<double, double> bessel_growth_bounds(const BesselSqParams& p, double t) {
    check_horizon(t);
    const double s2 = p.sigma * p.sigma;
    const double mean_sq = (p.y0 + p.a * t) * (p.y0 + p.a * t);
    const double var_part = 2.0 * p.y0 * t + p.a * t * t;
    return {2.0 * mean_sq + 4.0 * s2 * var_part, mean_sq + 0.5 * s2 * var_part};
}

double integrated_mean(const CirParams& p, double horizon) {
    check_horizon(horizon);
    const double z = p.b * horizon;
    return p.x0 * horizon * psi(z) + p.a * horizon * horizon * phi(z);
}

double third_moment_sup_bound(const CirParams& p, double horizon) {
    check_horizon(horizon);
    const double x0 = p.x0, a = p.a, s2 = p.sigma * p.sigma, T = horizon;
    const double f = 1.0 + 1.5 * s2 / a + 0.5 * s2 * s2 / (a * a);
    const double au = a * T * psi(p.b * T);  // (a/b)(1 - e^{-bT}), continuous at b = 0
    return x0 * x0 * x0 + f * (au * au * au + 3.0 * x0 * au * au) +
           3.0 * x0 * x0 * (1.0 + s2 / a) * au;
}

double second_moment_sup_bound(const CirParams& p, double horizon) {
    check_horizon(horizon);
    const double x0 = p.x0, a = p.a, s2 = p.sigma * p.sigma, T = horizon;
    const double up = T * psi(p.b * T);  // (1 - e^{-bT}) / b, continuous at b = 0
    return x0 * (s2 + 2.0 * a) * up + 0.5 * a * (s2 + 2.0 * a) * up * up + x0 * x0;
}

namespace {

// |a_n - a_0| T + |b_n - b_0| A_0^2(T) + |sigma_n - sigma_0| A_0(T),
// with the B_0 analogue when b_0 = 0.
double l1_inner(const CirParams& pn, const CirParams& p0, double T) {
    const double a0sq = integrated_mean(p0, T);
    return std::fabs(pn.a - p0.a) * T + std::fabs(pn.b - p0.b) * a0sq +
           std::fabs(pn.sigma - p0.sigma) * std::sqrt(a0sq);
}

}  // namespace

double rate_bound_l1(const CirParams& pn, const CirParams& p0, double horizon) {
    check_horizon(horizon);
    return std::exp(pn.b * horizon) * l1_inner(pn, p0, horizon);
}

double rate_bound_l2_distributional(const CirParams& pn, const CirParams& p0, double horizon) {
    check_horizon(horizon);
    const double r_sum = third_moment_sup_bound(pn, horizon) + third_moment_sup_bound(p0, horizon);
    return 2.0 * std::sqrt(r_sum) * std::exp(0.5 * pn.b * horizon) *
           std::sqrt(l1_inner(pn, p0, horizon));
}

double rate_bound_l2_pathwise(const CirParams& pn, const CirParams& p0, double horizon) {
    check_horizon(horizon);
    const double T = horizon;
    const double coeff = 2.0 * std::fabs(pn.a - p0.a) + p0.sigma * p0.sigma +
                         2.0 * p0.sigma * std::fabs(pn.sigma - p0.sigma);
    const double dn2 = second_moment_sup_bound(pn, T);
    const double d02 = second_moment_sup_bound(p0, T);
    const double an2 = integrated_mean(pn, T);
    const double first = coeff * l1_inner(pn, p0, T) * T * std::exp((pn.b + p0.b) * T);
    const double trailing = 2.0 * std::fabs(pn.b - p0.b) * T * (dn2 + std::sqrt(dn2 * d02)) +
                            std::fabs(pn.sigma - p0.sigma) * std::fabs(pn.sigma - p0.sigma) * an2;
    // The Gronwall factor on the trailing terms is only required when
    // b_0 > 0; for b_0 = 0 it is identically 1.
    return first + std::exp(p0.b * T) * trailing;
}

std::vector<EstimateWithError> mc_l1_distance_curve(const PathEnsemble& e1,
                                                    const PathEnsemble& e2) {
    return distance_curve(e1, e2, false);
}

std::vector<EstimateWithError> mc_l2_distance_curve(const PathEnsemble& e1,
                                                    const PathEnsemble& e2) {
    return distance_curve(e1, e2, true);
}

std::pair<EstimateWithError, double> mc_sup_l1_distance(const PathEnsemble& e1,
                                                        const PathEnsemble& e2) {
    return sup_of_curve(distance_curve(e1, e2, false), e1.grid());
}

std::pair<EstimateWithError, double> mc_sup_l2_distance(const PathEnsemble& e1,
                                                        const PathEnsemble& e2) {
    return sup_of_curve(distance_curve(e1, e2, true), e1.grid());
}

namespace {

// Per-path grid sup of (X + b int X)^2 at each requested time.
std::vector<EstimateWithError> sup_second_moment_impl(const PathEnsemble& e, double b,
                                                      const std::vector<double>& times) {
    const auto& t = e.grid().points();
    std::vector<std::size_t> stops;
    stops.reserve(times.size());
    for (double tt : times) {
        stops.push_back(e.grid().index_of(tt));
        if (stops.size() > 1 && stops.back() <= stops[stops.size() - 2]) {
            throw std::invalid_argument("requested times must be increasing");
        }
    }

    const std::size_t n_paths = e.n_paths();
    std::vector<std::vector<double>> samples(times.size(), std::vector<double>(n_paths));
    for (std::size_t i = 0; i < n_paths; ++i) {
        const auto row = e.path(i);
        double integral = 0.0;
        double running_max = row[0] * row[0];
        std::size_t next_stop = 0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j > 0) {
                integral += 0.5 * (row[j] + row[j - 1]) * (t[j] - t[j - 1]);
                const double v = row[j] + b * integral;
                running_max = std::max(running_max, v * v);
            }
            while (next_stop < stops.size() && stops[next_stop] == j) {
                samples[next_stop][i] = running_max;
                ++next_stop;
            }
        }
    }
    std::vector<EstimateWithError> out;
    out.reserve(times.size());
    for (const auto& s : samples) out.push_back(EstimateWithError::from_samples(s));
    return out;
}

}  // namespace

std::vector<EstimateWithError> mc_sup_second_moment_curve(const PathEnsemble& e,
                                                          const CirParams& p,
                                                          const std::vector<double>& times) {
    return sup_second_moment_impl(e, p.b, times);
}

EstimateWithError mc_sup_second_moment(const PathEnsemble& e, const CirParams& p) {
    return sup_second_moment_impl(e, p.b, {e.grid().horizon()}).front();
}

EstimateWithError mc_sup_second_moment(const PathEnsemble& e, const BesselSqParams& p) {
    return sup_second_moment_impl(e, 0.0, {e.grid().horizon()}).front();
}

}  // namespace srd
