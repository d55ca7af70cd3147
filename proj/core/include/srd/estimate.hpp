#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "srd/grid.hpp"

// Diffusion-coefficient estimation from realized quadratic variation and
// drift estimation by maximum likelihood, from a uniformly sampled
// strictly positive trajectory.

namespace srd {

// Uniformly sampled observations of one trajectory; estimators divide by
// the state, so values must be strictly positive.
struct DiscreteTrajectory {
    TimeGrid grid;
    std::vector<double> values;

    DiscreteTrajectory(TimeGrid g, std::vector<double> v);

    double horizon() const { return grid.horizon(); }
    std::size_t size() const { return values.size(); }

    // Two columns `t,value`, header required, uniform grid validated.
    static DiscreteTrajectory read_csv(std::istream& is);
};

// sigma^2 estimate: sum of squared increments over the trapezoid
// discretization of int Y ds.
double sigma2_qv(const DiscreteTrajectory& traj);

// Drift MLE in theta = a/sigma - sigma/4 with Z = sqrt(Y):
// theta_hat = 2 sum (Z_k - Z_{k-1})/Z_{k-1} / (sigma sum dt / Z_{k-1}^2),
// left-endpoint (Ito-consistent) sums.
double mle_theta(const DiscreteTrajectory& traj, double sigma);

// a_hat = sigma theta_hat + sigma^2 / 4.
double mle_a(const DiscreteTrajectory& traj, double sigma);

// (1/T) int_0^T dt / X_t by the trapezoid rule.
double ergodic_time_average_inverse(const DiscreteTrajectory& traj);

// {sigma2, theta, a, T, n} as JSON.
void write_estimate_report(std::ostream& os, double sigma2, double theta, double a,
                           double horizon, std::size_t n);

}  // namespace srd
