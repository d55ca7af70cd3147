#include "srd/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace srd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(name) + " must be finite");
    }
}

}  // namespace

double SpecialValue::log() const {
    if (log_scale) return value;
    if (value < 0.0) throw std::domain_error("SpecialValue::log of a negative value");
    return std::log(value);
}

double SpecialValue::linear() const { return log_scale ? std::exp(value) : value; }

double ln_gamma(double x) {
    require_finite(x, "ln_gamma argument");
    if (x <= 0.0) throw std::domain_error("ln_gamma requires x > 0");
    return std::lgamma(x);
}

// P(s,x) by the classical pair: power series for x < s + 1, Lentz
// continued fraction for the upper tail otherwise.
double reg_lower_inc_gamma(double s, double x) {
    require_finite(s, "reg_lower_inc_gamma s");
    require_finite(x, "reg_lower_inc_gamma x");
    if (s <= 0.0) throw std::domain_error("reg_lower_inc_gamma requires s > 0");
    if (x < 0.0) throw std::domain_error("reg_lower_inc_gamma requires x >= 0");
    if (x == 0.0) return 0.0;

    const double log_prefix = s * std::log(x) - x - std::lgamma(s);

    if (x < s + 1.0) {
        double term = 1.0 / s;
        double sum = term;
        for (int k = 1; k < 10000; ++k) {
            term *= x / (s + k);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return std::min(1.0, std::exp(log_prefix) * sum);
    }

    // Q(s,x) continued fraction (modified Lentz).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 10000; ++k) {
        const double an = -k * (k - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    const double q = std::exp(log_prefix) * h;
    return std::max(0.0, 1.0 - q);
}

namespace {

// Direct summation of the defining series; valid for all x but only
// used where the terms stay within double range.
double bessel_i_series(double nu, double x) {
    const double half_x = 0.5 * x;
    double term = std::exp(nu * std::log(half_x) - std::lgamma(nu + 1.0));
    double sum = term;
    const double q = half_x * half_x;
    for (int j = 0; j < 1000; ++j) {
        term *= q / ((j + 1.0) * (j + 1.0 + nu));
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return sum;
}

// ln of the series, summed around its peak term so it works for
// arbitrarily large x without overflow.  Terms are all positive.
double bessel_i_series_log(double nu, double x) {
    const double lh = std::log(0.5 * x);
    auto log_term = [&](double j) {
        return (2.0 * j + nu) * lh - std::lgamma(j + 1.0) - std::lgamma(j + 1.0 + nu);
    };
    // Peak where the term ratio crosses 1: (x/2)^2 = (j+1)(j+1+nu).
    const double disc = 0.25 * (nu + 1.0) * (nu + 1.0) + 0.25 * x * x;
    const long jpeak = std::lround(std::max(0.0, -0.5 * (nu + 2.0) + std::sqrt(disc)));
    const double lmax = log_term(static_cast<double>(jpeak));
    double sum = 1.0;
    for (long j = jpeak + 1; j < jpeak + 4000000L; ++j) {
        const double t = std::exp(log_term(static_cast<double>(j)) - lmax);
        sum += t;
        if (t < 1e-18 * sum) break;
    }
    for (long j = jpeak - 1; j >= 0; --j) {
        const double t = std::exp(log_term(static_cast<double>(j)) - lmax);
        sum += t;
        if (t < 1e-18 * sum) break;
    }
    return lmax + std::log(sum);
}

// Hankel large-argument expansion on log scale:
//   I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k.
// Truncated at the smallest term; returns NaN when the reachable
// accuracy is insufficient (large nu relative to x).
double bessel_i_asymptotic_log(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    double smallest = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * k * x);
        if (std::fabs(term) >= smallest) break;  // divergence onset
        smallest = std::fabs(term);
        sum += term;
        if (smallest < 1e-17 * std::fabs(sum)) break;
    }
    if (smallest > 1e-13 * std::fabs(sum) || sum <= 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

}  // namespace

SpecialValue bessel_i(double nu, double x) {
    require_finite(nu, "bessel_i nu");
    require_finite(x, "bessel_i x");
    if (nu <= -1.0) throw std::domain_error("bessel_i requires nu > -1");
    if (x < 0.0) throw std::domain_error("bessel_i requires x >= 0");
    if (x == 0.0) {
        // Only the j = 0 term survives: 1 for nu = 0, 0 for nu > 0,
        // +inf as x->0+ for nu in (-1, 0).
        if (nu == 0.0) return {1.0, false};
        if (nu > 0.0) return {0.0, false};
        return {kInf, false};
    }
    if (x <= detail::kBesselSeriesCutoff) {
        return {bessel_i_series(nu, x), false};
    }
    double lg = bessel_i_asymptotic_log(nu, x);
    if (std::isnan(lg)) lg = bessel_i_series_log(nu, x);
    return {lg, true};
}

double bessel_i_log(double nu, double x) {
    const SpecialValue v = bessel_i(nu, x);
    if (v.log_scale) return v.value;
    if (v.value == 0.0) return -kInf;
    return std::log(v.value);
}

SpecialValue kummer_1f1(double a, double c, double x) {
    require_finite(a, "kummer_1f1 a");
    require_finite(c, "kummer_1f1 c");
    require_finite(x, "kummer_1f1 x");
    if (c == 0.0 || (c < 0.0 && c == std::floor(c))) {
        throw std::domain_error("kummer_1f1: c must not be zero or a negative integer");
    }
    if (x == 0.0 || a == 0.0) return {1.0, false};
    if (x < 0.0) {
        // Kummer's transformation; the result may still be negative when
        // c - a < 0, and e^x < 1 keeps the linear product finite.
        SpecialValue v = kummer_1f1(c - a, c, -x);
        if (v.log_scale) return {v.value + x, true};
        return {v.value * std::exp(x), false};
    }

    double term = 1.0;
    double sum = 1.0;
    double log_offset = 0.0;
    for (int j = 0; j < 100000; ++j) {
        term *= (a + j) * x / ((c + j) * (j + 1.0));
        sum += term;
        if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
        if (std::fabs(sum) > 1e280) {  // rescale to dodge overflow
            log_offset += std::log(1e280);
            sum /= 1e280;
            term /= 1e280;
        }
    }
    if (log_offset == 0.0) return {sum, false};
    if (sum <= 0.0) throw std::domain_error("kummer_1f1: log-scaled result is not positive");
    return {log_offset + std::log(sum), true};
}

}  // namespace srd
