#include "srd/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "srd/specfun.hpp"

namespace srd {

namespace {

void check_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw std::domain_error(std::string(name) + " must be positive and finite");
    }
}

void check_time(double t, bool strict) {
    if (!std::isfinite(t) || t < 0.0 || (strict && t == 0.0)) {
        throw std::domain_error(strict ? "time must be > 0" : "time must be >= 0");
    }
}

[[noreturn]] void redirect_to_bessel(const char* what) {
    throw std::domain_error(std::string(what) +
                            ": b = 0 has no mean-reverting form, use the squared-Bessel variant");
}

}  // namespace

CirParams::CirParams(double x0_, double a_, double b_, double sigma_)
    : x0(x0_), a(a_), b(b_), sigma(sigma_) {
    check_positive(x0, "x0");
    check_positive(a, "a");
    check_positive(sigma, "sigma");
    if (!std::isfinite(b) || b < 0.0) throw std::domain_error("b must be >= 0 and finite");
}

BesselSqParams CirParams::as_bessel_sq() const {
    if (b != 0.0) throw std::domain_error("as_bessel_sq requires b == 0");
    return {x0, a, sigma};
}

std::string CirParams::describe() const {
    std::ostringstream os;
    os << "cir(x0=" << x0 << ",a=" << a << ",b=" << b << ",sigma=" << sigma << ")";
    return os.str();
}

BesselSqParams::BesselSqParams(double y0_, double a_, double sigma_)
    : y0(y0_), a(a_), sigma(sigma_) {
    check_positive(y0, "y0");
    check_positive(a, "a");
    check_positive(sigma, "sigma");
}

std::string BesselSqParams::describe() const {
    std::ostringstream os;
    os << "bessel_sq(y0=" << y0 << ",a=" << a << ",sigma=" << sigma << ")";
    return os.str();
}

double transition_scale(const CirParams& p, double t) {
    check_time(t, true);
    if (p.b == 0.0) return 0.5 * p.sigma * p.sigma * t;
    return p.sigma * p.sigma * (1.0 - std::exp(-p.b * t)) / (2.0 * p.b);
}

namespace {

// Shared non-central form: density of c * chi'^2(2(nu+1), 2m/c scaling),
// i.e. (1/c) (x/x_c)^{nu/2} exp(-(x+x_c)/c) I_nu(2 sqrt(x x_c)/c) where
// x_c is the decayed initial point.
double noncentral_density(double nu, double c, double x_center, double x) {
    if (x <= 0.0) return 0.0;
    if (x_center <= 0.0) {
        // center decayed below double range: plain Gamma(nu+1, scale c)
        const double log_p =
            -(nu + 1.0) * std::log(c) + nu * std::log(x) - x / c - ln_gamma(nu + 1.0);
        return std::exp(log_p);
    }
    const double log_i = bessel_i_log(nu, 2.0 * std::sqrt(x * x_center) / c);
    const double log_p = -std::log(c) + 0.5 * nu * (std::log(x) - std::log(x_center)) -
                         (x + x_center) / c + log_i;
    return std::exp(log_p);
}

}  // namespace

double cir_density(const CirParams& p, double t, double x) {
    if (p.b == 0.0) redirect_to_bessel("cir_density");
    check_time(t, true);
    if (!std::isfinite(x)) throw std::domain_error("cir_density: x must be finite");
    return noncentral_density(p.nu(), transition_scale(p, t), p.x0 * std::exp(-p.b * t), x);
}

double cir_stationary_density(const CirParams& p, double x) {
    if (p.b == 0.0) {
        throw std::domain_error("cir_stationary_density: no stationary law for b = 0");
    }
    if (!std::isfinite(x)) throw std::domain_error("cir_stationary_density: x must be finite");
    if (x <= 0.0) return 0.0;
    const double shape = 2.0 * p.a / (p.sigma * p.sigma);
    const double rate = 2.0 * p.b / (p.sigma * p.sigma);
    return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                    ln_gamma(shape));
}

double bessel_sq_density(const BesselSqParams& p, double t, double x) {
    check_time(t, true);
    if (!std::isfinite(x)) throw std::domain_error("bessel_sq_density: x must be finite");
    return noncentral_density(p.nu(), 0.5 * p.sigma * p.sigma * t, p.y0, x);
}

double cir_moment(const CirParams& p, double t, int k) {
    if (p.b == 0.0) redirect_to_bessel("cir_moment");
    check_time(t, false);
    const double x0 = p.x0, a = p.a, b = p.b, s2 = p.sigma * p.sigma;
    const double e1 = std::exp(-b * t);
    // Factored forms in u = 1 - e^{-bt}; the raw displays subtract
    // nearly equal exponentials and lose all digits as b -> 0.
    const double u = -std::expm1(-b * t);
    switch (k) {
        case 1:
            return x0 * e1 + (a / b) * u;
        case 2:
            return x0 * (s2 + 2.0 * a) / b * e1 * u +
                   a * (s2 + 2.0 * a) / (2.0 * b * b) * u * u + x0 * x0 * e1 * e1;
        case 3: {
            const double f = 1.0 + 1.5 * s2 / a + 0.5 * s2 * s2 / (a * a);
            const double au = a / b * u;
            return x0 * x0 * x0 * e1 * e1 * e1 +
                   f * (au * au * au + 3.0 * x0 * au * au * e1) +
                   3.0 * x0 * x0 * (1.0 + s2 / a) * au * e1 * e1;
        }
        default:
            throw std::domain_error("cir_moment: k must be 1, 2 or 3");
    }
}

double bessel_sq_moment(const BesselSqParams& p, double t, int k) {
    check_time(t, false);
    const double y0 = p.y0, a = p.a, s2 = p.sigma * p.sigma;
    switch (k) {
        case 1:
            return y0 + a * t;
        case 2:
            return y0 * y0 + (0.5 * s2 + a) * (2.0 * y0 * t + a * t * t);
        case 3:
            return (0.5 * a * s2 * s2 + 1.5 * a * a * s2 + a * a * a) * t * t * t +
                   3.0 * (0.5 * y0 * s2 * s2 + 1.5 * a * y0 * s2 + a * a * y0) * t * t +
                   3.0 * y0 * y0 * (s2 + a) * t + y0 * y0 * y0;
        default:
            throw std::domain_error("bessel_sq_moment: k must be 1, 2 or 3");
    }
}

double bessel_sq_moment_p(const BesselSqParams& p, double t, double pw) {
    check_time(t, true);
    if (!std::isfinite(pw)) throw std::domain_error("bessel_sq_moment_p: pw must be finite");
    const double q = 2.0 * p.a / (p.sigma * p.sigma);
    if (pw < -q) {
        throw std::domain_error("bessel_sq_moment_p requires pw >= -2a/sigma^2");
    }
    if (pw == 0.0) return 1.0;
    if (pw == -q) return std::numeric_limits<double>::infinity();  // Gamma(0) pole
    const double c = 0.5 * p.sigma * p.sigma * t;
    const double z = p.y0 / c;
    const double log_m =
        pw * std::log(c) + ln_gamma(q + pw) - ln_gamma(q) - z + kummer_1f1(q + pw, q, z).log();
    return std::exp(log_m);
}

double ergodic_inverse_mean(const CirParams& p) {
    if (p.b <= 0.0) throw std::domain_error("ergodic_inverse_mean requires b > 0");
    if (!p.feller_strict()) {
        throw std::domain_error("ergodic_inverse_mean requires 2a > sigma^2");
    }
    return p.b / (p.a - 0.5 * p.sigma * p.sigma);
}

}  // namespace srd
