#pragma once

#include <string>

// Parameter objects and the exact distributional objects of the two
// square-root diffusions
//
//   dX = (a - b X) dt + sigma sqrt(X) dW   (mean-reverting, b > 0)
//   dY = a dt       + sigma sqrt(Y) dW     (the b = 0 phase)
//
// together with their transition/stationary densities and closed-form
// moments.  All functions are pure; densities evaluate on log scale
// internally and only exponentiate at the end.

namespace srd {

struct BesselSqParams;

// Coefficients (x0, a, b, sigma) with b >= 0.  nu = 2a/sigma^2 - 1.
struct CirParams {
    double x0;
    double a;
    double b;
    double sigma;

    CirParams(double x0_, double a_, double b_, double sigma_);

    double nu() const { return 2.0 * a / (sigma * sigma) - 1.0; }
    // Standing assumption of the model: trajectories stay strictly positive.
    bool feller() const { return 2.0 * a >= sigma * sigma; }
    // Strict version required by the drift estimator and ergodic averages.
    bool feller_strict() const { return 2.0 * a > sigma * sigma; }

    // The b = 0 member of the family; throws unless b == 0.
    BesselSqParams as_bessel_sq() const;

    std::string describe() const;
};

// Coefficients (y0, a, sigma); semantically CirParams with b = 0.
struct BesselSqParams {
    double y0;
    double a;
    double sigma;

    BesselSqParams(double y0_, double a_, double sigma_);

    double nu() const { return 2.0 * a / (sigma * sigma) - 1.0; }
    bool feller() const { return 2.0 * a >= sigma * sigma; }
    bool feller_strict() const { return 2.0 * a > sigma * sigma; }

    CirParams as_cir() const { return {y0, a, 0.0, sigma}; }

    std::string describe() const;
};

// Scale c(t) = sigma^2 (1 - e^{-bt}) / (2b) of the transition law,
// continuous at b = 0 where it equals sigma^2 t / 2.
double transition_scale(const CirParams& p, double t);

// Transition density p_t(x) from x0; requires b > 0 (use
// bessel_sq_density for the b = 0 phase) and t > 0.  Zero for x <= 0.
double cir_density(const CirParams& p, double t, double x);

// Stationary Gamma(2a/sigma^2, rate 2b/sigma^2) density; requires b > 0.
double cir_stationary_density(const CirParams& p, double x);

// Transition density g_t(x) of the squared Bessel process from y0; t > 0.
double bessel_sq_density(const BesselSqParams& p, double t, double x);

// E X_t^k for k in {1,2,3}, closed form; requires b > 0, t >= 0.
double cir_moment(const CirParams& p, double t, int k);

// E Y_t^k for k in {1,2,3}, closed form; t >= 0.
double bessel_sq_moment(const BesselSqParams& p, double t, int k);

// General real moment E Y_t^pw via the 1F1 formula; pw >= -2a/sigma^2,
// t > 0.  +inf at the boundary pw = -2a/sigma^2.
double bessel_sq_moment_p(const BesselSqParams& p, double t, double pw);

// Limit of (1/T) int_0^T dt/X_t: b / (a - sigma^2/2).
// Requires b > 0 and the strict Feller condition.
double ergodic_inverse_mean(const CirParams& p);

}  // namespace srd
