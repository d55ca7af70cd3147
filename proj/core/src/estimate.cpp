#include "srd/estimate.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace srd {

DiscreteTrajectory::DiscreteTrajectory(TimeGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("trajectory length does not match its grid");
    }
    if (!grid.uniform_step()) {
        throw std::invalid_argument("trajectory grid must be uniform");
    }
    for (double x : values) {
        if (!std::isfinite(x) || x <= 0.0) {
            throw std::invalid_argument("trajectory values must be strictly positive");
        }
    }
}

DiscreteTrajectory DiscreteTrajectory::read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty trajectory CSV");
    if (line != "t,value" && line != "t,value\r") {
        throw std::runtime_error("trajectory CSV must start with header 't,value'");
    }
    std::vector<double> t, v;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b)) {
            throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                                     ": expected two columns");
        }
        try {
            t.push_back(std::stod(a));
            v.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw std::runtime_error("trajectory CSV line " + std::to_string(lineno) +
                                     ": not a number");
        }
    }
    try {
        return {TimeGrid(std::move(t)), std::move(v)};
    } catch (const std::invalid_argument& e) {
        // bad observation files are runtime failures, not config errors
        throw std::runtime_error(std::string("trajectory CSV: ") + e.what());
    }
}

namespace {

double trapezoid(const DiscreteTrajectory& traj, bool inverse) {
    const auto& t = traj.grid.points();
    const auto& y = traj.values;
    double acc = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        const double f1 = inverse ? 1.0 / y[k - 1] : y[k - 1];
        const double f2 = inverse ? 1.0 / y[k] : y[k];
        acc += 0.5 * (f1 + f2) * (t[k] - t[k - 1]);
    }
    return acc;
}

}  // namespace

double sigma2_qv(const DiscreteTrajectory& traj) {
    const auto& y = traj.values;
    double qv = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        qv += (y[k] - y[k - 1]) * (y[k] - y[k - 1]);
    }
    if (qv == 0.0) {
        throw std::domain_error("sigma2_qv: degenerate (constant) trajectory");
    }
    return qv / trapezoid(traj, false);
}

double mle_theta(const DiscreteTrajectory& traj, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("mle_theta requires sigma > 0");
    }
    const double dt = *traj.grid.uniform_step();
    const auto& y = traj.values;
    double num = 0.0;
    double den = 0.0;
    double z_prev = std::sqrt(y[0]);
    for (std::size_t k = 1; k < y.size(); ++k) {
        const double z = std::sqrt(y[k]);
        num += (z - z_prev) / z_prev;
        den += dt / (z_prev * z_prev);
        z_prev = z;
    }
    if (den == 0.0) throw std::domain_error("mle_theta: zero denominator");
    return 2.0 * num / (sigma * den);
}

double mle_a(const DiscreteTrajectory& traj, double sigma) {
    return sigma * mle_theta(traj, sigma) + 0.25 * sigma * sigma;
}

double ergodic_time_average_inverse(const DiscreteTrajectory& traj) {
    return trapezoid(traj, true) / traj.horizon();
}

void write_estimate_report(std::ostream& os, double sigma2, double theta, double a,
                           double horizon, std::size_t n) {
    nlohmann::ordered_json j;
    j["sigma2"] = sigma2;
    j["theta"] = theta;
    j["a"] = a;
    j["T"] = horizon;
    j["n"] = n;
    os << j.dump(2) << '\n';
}

}  // namespace srd
