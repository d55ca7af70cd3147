#include "srd/instability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "srd/specfun.hpp"

namespace srd {

OccupancyCurve occupancy_average(const PathEnsemble& e, double threshold,
                                 const std::vector<double>& times) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw std::domain_error("occupancy threshold N must be > 0");
    }
    if (times.empty()) throw std::invalid_argument("occupancy_average: no times requested");
    std::vector<std::size_t> stops;
    stops.reserve(times.size());
    double prev = 0.0;
    for (double t : times) {
        if (t <= prev) throw std::invalid_argument("occupancy times must be increasing and > 0");
        stops.push_back(e.grid().index_of(t));   // throws if off-grid
        prev = t;
    }

    const auto& t = e.grid().points();
    const std::size_t n_paths = e.n_paths();
    std::vector<std::vector<double>> samples(times.size(), std::vector<double>(n_paths));
    for (std::size_t i = 0; i < n_paths; ++i) {
        const auto row = e.path(i);
        double integral = 0.0;
        std::size_t next_stop = 0;
        double ind_prev = std::fabs(row[0]) < threshold ? 1.0 : 0.0;
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j > 0) {
                const double ind = std::fabs(row[j]) < threshold ? 1.0 : 0.0;
                integral += 0.5 * (ind + ind_prev) * (t[j] - t[j - 1]);
                ind_prev = ind;
            }
            while (next_stop < stops.size() && stops[next_stop] == j) {
                samples[next_stop][i] = integral / t[j];
                ++next_stop;
            }
        }
    }

    OccupancyCurve curve;
    curve.times = times;
    curve.value.reserve(times.size());
    for (const auto& s : samples) curve.value.push_back(EstimateWithError::from_samples(s));
    return curve;
}

void OccupancyCurve::write_csv(std::ostream& os, double threshold,
                               const std::string& params_tag, std::uint64_t seed) const {
    os << "time,mean,stderr,n,N,params,seed\n";
    char buf[160];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%zu,%.17g,", times[i], value[i].mean,
                      value[i].stderr_, value[i].n, threshold);
        os << buf << params_tag << ',' << seed << '\n';
    }
}

void OccupancyCurve::write_json(std::ostream& os, double threshold,
                                const std::string& params_tag, std::uint64_t seed) const {
    nlohmann::ordered_json j;
    j["N"] = threshold;
    j["params"] = params_tag;
    j["seed"] = seed;
    j["times"] = times;
    std::vector<double> means, errs;
    for (const auto& v : value) {
        means.push_back(v.mean);
        errs.push_back(v.stderr_);
    }
    j["mean"] = means;
    j["stderr"] = errs;
    j["n"] = value.empty() ? 0 : value.front().n;
    os << j.dump(2) << '\n';
}

double cir_occupancy_limit(const CirParams& p, double threshold) {
    if (p.b <= 0.0) throw std::domain_error("cir_occupancy_limit requires b > 0");
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw std::domain_error("occupancy threshold N must be > 0");
    }
    const double s2 = p.sigma * p.sigma;
    return reg_lower_inc_gamma(2.0 * p.a / s2, 2.0 * p.b * threshold / s2);
}

double weak_limit_reference_cdf(double t, double x) { return weak_limit_reference_cdf(t, x, 1.0); }

double weak_limit_reference_cdf(double t, double x, double c) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("reference CDF requires t > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("reference CDF requires c > 0");
    if (x <= 0.0) return 0.0;
    return reg_lower_inc_gamma(0.5 * (2.0 * c + 1.0), x * x / (2.0 * t));
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    const std::size_t n = samples.size();
    if (n < 10) throw std::invalid_argument("ks_statistic needs at least 10 samples");
    std::sort(samples.begin(), samples.end());
    double stat = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(samples[i]);
        const double hi = (static_cast<double>(i) + 1.0) / static_cast<double>(n) - f;
        const double lo = f - static_cast<double>(i) / static_cast<double>(n);
        stat = std::max({stat, hi, lo});
    }
    return stat;
}

void write_ks_report(std::ostream& os, double statistic, std::size_t n,
                     const std::string& params_tag, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["ks"] = statistic;
    j["n"] = n;
    j["params"] = params_tag;
    j["seed"] = seed;
    os << j.dump(2) << '\n';
}

}  // namespace srd
