#pragma once

// Scalar special functions used by the transition densities, moment
// formulas and occupancy limits: ln Gamma, the regularized lower
// incomplete gamma, the modified Bessel function I_nu and Kummer's 1F1.
// Everything is pure and reentrant; invalid inputs throw std::domain_error.

namespace srd {

// A value that may be carried on log scale when the linear value would
// overflow a double.  If log_scale is false, value is the result itself
// and is finite; otherwise value is its natural logarithm.
struct SpecialValue {
    double value = 0.0;
    bool log_scale = false;

    double log() const;     // ln of the represented value (value must be > 0)
    double linear() const;  // exp back to linear scale (may overflow to inf)
};

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s),
// s > 0, x >= 0.  Monotone nondecreasing in x, values in [0, 1].
double reg_lower_inc_gamma(double s, double x);

// Modified Bessel function of the first kind, nu > -1, x >= 0.
// Defining power series below the tested switch point, log-scaled
// asymptotic expansion above it.
SpecialValue bessel_i(double nu, double x);

// ln I_nu(x); -inf when I_nu(x) = 0 (x = 0, nu > 0).
double bessel_i_log(double nu, double x);

// Kummer's confluent hypergeometric function 1F1(a, c, x).
// c must not be zero or a negative integer.  Negative x is evaluated
// through Kummer's transformation 1F1(a,c,-x) = e^{-x} 1F1(c-a,c,x).
SpecialValue kummer_1f1(double a, double c, double x);

namespace detail {
// Power-series/asymptotic switch point for bessel_i; exposed for tests.
inline constexpr double kBesselSeriesCutoff = 30.0;
}  // namespace detail

}  // namespace srd
