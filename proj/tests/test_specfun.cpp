#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "srd/rng.hpp"
#include "srd/specfun.hpp"

using srd::bessel_i;
using srd::bessel_i_log;
using srd::kummer_1f1;
using srd::ln_gamma;
using srd::reg_lower_inc_gamma;

namespace {

// Defining power series at extended precision, the independent oracle
// for bessel_i on moderate arguments.
long double bessel_series_oracle(long double nu, long double x, int terms = 60) {
    long double sum = 0.0L;
    for (int j = 0; j < terms; ++j) {
        sum += std::pow(x / 2.0L, 2 * j + nu) /
               (std::tgammal(static_cast<long double>(j) + 1.0L) * std::tgammal(j + 1.0L + nu));
    }
    return sum;
}

// Direct (alternating) series for 1F1 in quad precision; the extra
// digits absorb the cancellation so Kummer's transformation can be
// checked against a genuinely independent evaluation at 1e-10.
double kummer_series_oracle(double a, double c, double x) {
    __float128 term = 1, sum = 1;
    const __float128 qa = a, qc = c, qx = x;
    for (int j = 0; j < 3000; ++j) {
        term *= (qa + j) * qx / ((qc + j) * (j + 1));
        sum += term;
        const __float128 at = term < 0 ? -term : term;
        const __float128 as = sum < 0 ? -sum : sum;
        if (at < 1e-30q * (as + 1)) break;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("ln_gamma spot values") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(ln_gamma(0.5) == doctest::Approx(0.57236494292470008707).epsilon(1e-13));
    CHECK(ln_gamma(1e-3) == doctest::Approx(6.9071788853838536825).epsilon(1e-12));
    CHECK(ln_gamma(1e3) == doctest::Approx(5905.2204232091812118).epsilon(1e-12));
}

TEST_CASE("ln_gamma domain errors") {
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.2), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("regularized lower incomplete gamma") {
    CHECK(reg_lower_inc_gamma(2.7, 0.0) == 0.0);
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(reg_lower_inc_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
    }
    CHECK(reg_lower_inc_gamma(3.5, 400.0) == doctest::Approx(1.0).epsilon(1e-14));
    // frozen: P(4, 4)
    CHECK(reg_lower_inc_gamma(4.0, 4.0) ==
          doctest::Approx(0.56652987963329106638).epsilon(1e-13));

    CHECK_THROWS_AS(reg_lower_inc_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(reg_lower_inc_gamma(1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(reg_lower_inc_gamma(std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("incomplete gamma is monotone in x") {
    srd::PhiloxEngine rng(7u, 0u);
    for (int i = 0; i < 200; ++i) {
        const double s = 0.1 + 5.0 * rng.uniform01();
        const double x1 = 20.0 * rng.uniform01();
        const double x2 = x1 + 10.0 * rng.uniform01();
        CHECK(reg_lower_inc_gamma(s, x2) >= reg_lower_inc_gamma(s, x1));
    }
}

TEST_CASE("bessel_i at zero argument") {
    CHECK(bessel_i(0.0, 0.0).value == 1.0);
    CHECK(bessel_i(0.5, 0.0).value == 0.0);
    CHECK(bessel_i(3.0, 0.0).value == 0.0);
}

TEST_CASE("bessel_i matches the defining series") {
    CHECK(bessel_i(0.5, 1.0).value ==
          doctest::Approx(0.93767488824548764672).epsilon(1e-13));
    srd::PhiloxEngine rng(11u, 0u);
    for (int i = 0; i < 100; ++i) {
        const double nu = -0.9 + 6.0 * rng.uniform01();
        const double x = 30.0 * rng.uniform01();
        const auto got = bessel_i(nu, x);
        REQUIRE(!got.log_scale);
        const double want = static_cast<double>(bessel_series_oracle(nu, x, 80));
        CHECK(got.value == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("bessel_i log-scaled branch") {
    // frozen high-precision references
    CHECK(bessel_i_log(3.0, 50.0) == doctest::Approx(47.036684029665488884).epsilon(1e-12));
    CHECK(bessel_i_log(2.5, 200.0) == doctest::Approx(196.41686528494457545).epsilon(1e-12));
    const auto v = bessel_i(0.0, 500.0);
    CHECK(v.log_scale);
    // continuity across the series/asymptotic switch
    const double below = bessel_i_log(1.5, srd::detail::kBesselSeriesCutoff - 1e-9);
    const double above = bessel_i_log(1.5, srd::detail::kBesselSeriesCutoff + 1e-9);
    CHECK(below == doctest::Approx(above).epsilon(1e-9));
    // large order relative to argument falls back to the scaled series
    const double big_nu = bessel_i_log(60.0, 40.0);
    CHECK(big_nu == doctest::Approx(std::log(static_cast<double>(
                        bessel_series_oracle(60.0L, 40.0L, 200)))).epsilon(1e-9));
}

TEST_CASE("bessel_i small-argument asymptote") {
    for (double nu : {0.25, 0.5, 1.0, 2.0}) {
        for (double x : {1e-4, 1e-3}) {
            const double ratio = bessel_i(nu, x).value *
                                 std::exp(ln_gamma(nu + 1.0) - nu * std::log(0.5 * x));
            CHECK(ratio > 1.0 - 1e-3);
            CHECK(ratio < 1.0 + 1e-3);
        }
    }
}

TEST_CASE("bessel_i domain errors") {
    CHECK_THROWS_AS(bessel_i(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(-1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(std::nan(""), 1.0), std::domain_error);
}

TEST_CASE("kummer_1f1 basics") {
    CHECK(kummer_1f1(1.3, 2.4, 0.0).value == 1.0);
    CHECK(kummer_1f1(0.0, 2.4, 3.0).value == 1.0);
    CHECK(kummer_1f1(1.5, 2.5, 10.0).value ==
          doctest::Approx(3128.7352996840916381).epsilon(1e-12));
    CHECK(kummer_1f1(0.5, 1.5, -20.0).value ==
          doctest::Approx(0.19816636482997365410).epsilon(1e-12));
    CHECK_THROWS_AS(kummer_1f1(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(kummer_1f1(1.0, -2.0, 1.0), std::domain_error);
    // a == c collapses to e^x; exercise the log-scaled path
    const auto big = kummer_1f1(2.0, 2.0, 800.0);
    CHECK(big.log() == doctest::Approx(800.0).epsilon(1e-12));
}

TEST_CASE("closed forms for integer parameter offsets") {
    for (double c : {0.5, 1.5, 3.0}) {
        for (double x = 0.0; x <= 20.0; x += 0.5) {
            const double lhs1 = std::exp(-x) * kummer_1f1(c + 1.0, c, x).linear();
            CHECK(lhs1 == doctest::Approx(1.0 + x / c).epsilon(1e-11));
            const double lhs3 = std::exp(-x) * kummer_1f1(c + 3.0, c, x).linear();
            const double rhs3 = 1.0 + 3.0 * x / c + 3.0 * x * x / (c * (c + 1.0)) +
                                x * x * x / (c * (c + 1.0) * (c + 2.0));
            CHECK(lhs3 == doctest::Approx(rhs3).epsilon(1e-11));
        }
    }
}

TEST_CASE("Kummer transformation against an independent series") {
    for (double a : {0.5, 1.5, 3.0}) {
        for (double c : {0.5, 1.5, 3.0}) {
            for (double x = 0.0; x <= 20.0; x += 2.0) {
                const double via_transform = kummer_1f1(a, c, -x).linear();
                const double direct = kummer_series_oracle(a, c, -x);
                const double scale = std::max(1.0, std::fabs(direct));
                CHECK(std::fabs(via_transform - direct) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("SpecialValue log/linear round trip") {
    const srd::SpecialValue lin{12.5, false};
    CHECK(std::exp(lin.log()) == doctest::Approx(12.5).epsilon(1e-12));
    const srd::SpecialValue logged{3.0, true};
    CHECK(std::log(logged.linear()) == doctest::Approx(3.0).epsilon(1e-12));
}
