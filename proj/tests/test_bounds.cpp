#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "srd/bounds.hpp"
#include "srd/model.hpp"
#include "srd/rng.hpp"
#include "srd/simulate.hpp"

using srd::BesselSqParams;
using srd::CirParams;
using srd::TimeGrid;

TEST_CASE("Gronwall growth bound") {
    const CirParams p(1.0, 1.0, 1.0, 1.0);
    CHECK(srd::growth_bound_gronwall(p, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(srd::growth_bound_gronwall(p, 1.0) ==
          doctest::Approx(2.0 * (4.0 + 2.0) * std::exp(4.0)).epsilon(1e-14));
    // vanishing noise leaves the deterministic envelope
    const CirParams quiet(1.0, 1.0, 1.0, 1e-9);
    CHECK(srd::growth_bound_gronwall(quiet, 2.0) ==
          doctest::Approx(2.0 * 9.0).epsilon(1e-6));
    const BesselSqParams q(1.5, 1.0, 1.0);
    CHECK(srd::growth_bound_gronwall(q, 0.0) == doctest::Approx(2.0 * 1.5 * 1.5).epsilon(1e-14));
}

TEST_CASE("moment-route growth bound") {
    CHECK_THROWS_AS(srd::growth_bound_moment(CirParams(1, 1, 0, 1), 1.0), std::domain_error);
    // x0 = a/b kills the middle term
    const CirParams bal(2.0, 2.0, 1.0, 1.3);
    const double t = 1.7;
    const double s2 = 1.3 * 1.3;
    CHECK(srd::growth_bound_moment(bal, t) ==
          doctest::Approx(2.0 * std::pow(2.0 + 2.0 * t, 2) + 8.0 * s2 * 2.0 * t).epsilon(1e-13));
    // b -> 0 recovers the b = 0 upper bound
    const CirParams small_b(1.0, 2.0, 1e-9, 1.0);
    const auto [upper, lower] = srd::bessel_growth_bounds(BesselSqParams(1.0, 2.0, 1.0), t);
    CHECK(srd::growth_bound_moment(small_b, t) == doctest::Approx(upper).epsilon(1e-6));
    CHECK(upper > lower);
    // large-t leading coefficient is 2 a^2
    const CirParams p(1.0, 2.0, 1.0, 1.0);
    const double big = 1e6;
    CHECK(srd::growth_bound_moment(p, big) / (big * big) ==
          doctest::Approx(2.0 * p.a * p.a).epsilon(1e-3));
}

TEST_CASE("squared-Bessel growth bounds") {
    const BesselSqParams p(1.2, 0.8, 1.1);
    const auto [u0, l0] = srd::bessel_growth_bounds(p, 0.0);
    CHECK(u0 == doctest::Approx(2.0 * 1.2 * 1.2).epsilon(1e-14));
    CHECK(l0 == doctest::Approx(1.2 * 1.2).epsilon(1e-14));
    srd::PhiloxEngine rng(17u, 0u);
    for (int i = 0; i < 100; ++i) {
        const BesselSqParams r(0.1 + 3.0 * rng.uniform01(), 0.1 + 2.0 * rng.uniform01(),
                               0.2 + 1.5 * rng.uniform01());
        const double t = 5.0 * rng.uniform01();
        const auto [u, l] = srd::bessel_growth_bounds(r, t);
        CHECK(u >= l);
    }
}

TEST_CASE("Gronwall vs b=0 bound: exponential blowup side") {
    // When e^{4 sigma^2 t} exceeds max(1, 2 y0 + a t), the Gronwall
    // envelope is strictly worse.  (The reverse comparison is not exact:
    // near t = 0 the noise terms keep the b=0 route tighter even while
    // e^{4 sigma^2 t} <= 2 y0 + a t.)
    srd::PhiloxEngine rng(18u, 0u);
    for (int i = 0; i < 200; ++i) {
        const BesselSqParams p(0.6 + 2.0 * rng.uniform01(), 0.2 + 2.0 * rng.uniform01(),
                               0.4 + 1.2 * rng.uniform01());
        const double t = 0.05 + 4.0 * rng.uniform01();
        const double w = 2.0 * p.y0 + p.a * t;
        if (std::exp(4.0 * p.sigma * p.sigma * t) > std::max(1.0, w)) {
            CHECK(srd::growth_bound_gronwall(p, t) > srd::bessel_growth_bounds(p, t).first);
        }
    }
}

TEST_CASE("integrated mean brackets") {
    srd::PhiloxEngine rng(19u, 0u);
    for (int i = 0; i < 100; ++i) {
        const CirParams p(0.2 + 3.0 * rng.uniform01(), 0.3 + 2.0 * rng.uniform01(),
                          0.1 + 2.0 * rng.uniform01(), 1.0);
        const double T = 0.1 + 5.0 * rng.uniform01();
        const double a0sq = srd::integrated_mean(p, T);
        CHECK(a0sq >= std::min(p.x0, p.a / p.b) * T - 1e-12);
        CHECK(a0sq <= std::max(p.x0, p.a / p.b) * T + 1e-12);
    }
    // b = 0 form
    const CirParams flat(1.0, 2.0, 0.0, 1.0);
    CHECK(srd::integrated_mean(flat, 3.0) == doctest::Approx(3.0 + 9.0).epsilon(1e-14));
}

TEST_CASE("L1 rate bound") {
    const CirParams p0(1.0, 1.0, 0.5, 1.0);
    CHECK(srd::rate_bound_l1(p0, p0, 2.0) == 0.0);
    // simplified form at a_n = a_0, sigma_n = sigma_0, b_0 = 0
    const CirParams limit(1.0, 1.0, 0.0, 1.0);
    for (double bn : {0.5, 0.2, 0.05}) {
        const CirParams pn(1.0, 1.0, bn, 1.0);
        for (double T : {0.5, 1.0, 3.0}) {
            const double want = std::exp(bn * T) * bn * T * (1.0 + 0.5 * T);
            CHECK(srd::rate_bound_l1(pn, limit, T) == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("L2 distributional rate bound") {
    const CirParams p0(1.0, 1.0, 0.5, 1.0);
    CHECK(srd::rate_bound_l2_distributional(p0, p0, 2.0) == 0.0);
    // third-moment envelope: x0^3 at T = 0, saturating in T for b > 0
    CHECK(srd::third_moment_sup_bound(CirParams(1.3, 1.0, 0.0, 1.0), 0.0) ==
          doctest::Approx(1.3 * 1.3 * 1.3).epsilon(1e-13));
    const CirParams pn(1.0, 1.0, 0.4, 1.0);
    const double r100 = srd::third_moment_sup_bound(pn, 100.0);
    const double r1000 = srd::third_moment_sup_bound(pn, 1000.0);
    CHECK(r1000 / r100 < 1.0 + 1e-6);
    // continuity of the envelope in b at 0
    CHECK(srd::third_moment_sup_bound(CirParams(1.0, 2.0, 1e-9, 1.0), 2.0) ==
          doctest::Approx(srd::third_moment_sup_bound(CirParams(1.0, 2.0, 0.0, 1.0), 2.0))
              .epsilon(1e-5));
}

TEST_CASE("L2 pathwise rate bound") {
    const CirParams p0(1.0, 1.0, 0.5, 1.0);
    CHECK(srd::rate_bound_l2_pathwise(p0, p0, 2.0) == 0.0);
    // large-T growth order O(T^2 e^{(bn+b0)T})
    const CirParams pn(1.0, 1.0, 0.3, 1.0);
    auto scaled = [&](double T) {
        return srd::rate_bound_l2_pathwise(pn, p0, T) /
               (T * T * std::exp((pn.b + p0.b) * T));
    };
    const double r20 = scaled(20.0), r40 = scaled(40.0), r80 = scaled(80.0);
    CHECK(r40 / r20 < 2.0);
    CHECK(r80 / r40 < 1.2);
    // b0 = 0 branch: trailing terms carry no Gronwall factor
    const CirParams limit(1.0, 1.0, 0.0, 1.0);
    const CirParams pn2(1.0, 1.0, 0.25, 1.0);
    const double T = 2.0;
    const double dn2 = srd::second_moment_sup_bound(pn2, T);
    const double e02 = srd::second_moment_sup_bound(limit, T);
    const double inner = pn2.b * srd::integrated_mean(limit, T);
    const double manual = 1.0 * inner * T * std::exp(pn2.b * T) +
                          2.0 * pn2.b * T * (dn2 + std::sqrt(dn2 * e02));
    CHECK(srd::rate_bound_l2_pathwise(pn2, limit, T) == doctest::Approx(manual).epsilon(1e-13));
}

TEST_CASE("bn, Tn schedule drives the approximation bound to zero") {
    const CirParams limit(1.0, 1.0, 0.0, 1.0);
    double prev = 1e100;
    for (double n : {1e2, 1e4, 1e8}) {
        const double bn = 1.0 / n;
        const double Tn = std::log(std::log(n));
        const double bound = srd::rate_bound_l1(CirParams(1.0, 1.0, bn, 1.0), limit, Tn);
        CHECK(bound < prev);
        prev = bound;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("MC distance estimators on coupled ensembles") {
    const CirParams limit(1.0, 1.0, 0.0, 1.0);
    const CirParams mid(1.0, 1.0, 0.3, 1.0);
    const CirParams far(1.0, 1.0, 0.6, 1.0);
    const TimeGrid grid = TimeGrid::uniform(1.0, 256);
    const auto ens = srd::simulate_coupled({limit, mid, far}, grid, 4000, 7171u, 2);

    // trivial zero distance and coupling checks
    const auto [zero, tz] = srd::mc_sup_l1_distance(ens[0], ens[0]);
    CHECK(zero.mean == 0.0);
    const auto other = srd::simulate_coupled({limit}, grid, 4000, 7272u, 2);
    CHECK_THROWS_AS(srd::mc_sup_l1_distance(ens[0], other[0]), std::invalid_argument);
    const auto short_grid = srd::simulate_coupled({limit}, TimeGrid::uniform(1.0, 128), 4000,
                                                  7171u, 2);
    CHECK_THROWS_AS(srd::mc_sup_l1_distance(ens[0], short_grid[0]), std::invalid_argument);

    // certification against the closed-form bound
    const auto [d_mid, t_mid] = srd::mc_sup_l1_distance(ens[0], ens[1]);
    CHECK(d_mid.mean <= srd::rate_bound_l1(mid, limit, 1.0) + 3.0 * d_mid.stderr_);
    const auto [d_far, t_far] = srd::mc_sup_l1_distance(ens[0], ens[2]);
    CHECK(d_far.mean <= srd::rate_bound_l1(far, limit, 1.0) + 3.0 * d_far.stderr_);

    // distances scale about linearly in bn
    const double ratio = d_far.mean / d_mid.mean;
    CHECK(ratio > 0.5 * 2.0);
    CHECK(ratio < 2.0 * 2.0);

    // L2 versions and the Jensen ordering at the L1 argmax
    const auto [l2_mid, t2] = srd::mc_sup_l2_distance(ens[0], ens[1]);
    CHECK(l2_mid.mean <= srd::rate_bound_l2_distributional(mid, limit, 1.0) + 3.0 * l2_mid.stderr_);
    CHECK(l2_mid.mean <= srd::rate_bound_l2_pathwise(mid, limit, 1.0) + 3.0 * l2_mid.stderr_);
    CHECK(l2_mid.mean >= d_mid.mean * d_mid.mean - 3.0 * (l2_mid.stderr_ + d_mid.stderr_));
}

TEST_CASE("sup second moment estimator") {
    const CirParams p(1.0, 2.0, 1.0, 1.0);
    const TimeGrid grid = TimeGrid::uniform(1.5, 384);
    const auto ens = srd::simulate_coupled({p}, grid, 3000, 909u, 2);
    const auto est = srd::mc_sup_second_moment(ens.front(), p);
    CHECK(est.mean <= srd::growth_bound_moment(p, 1.5) + 3.0 * est.stderr_);
    CHECK(est.mean >= srd::cir_moment(p, 1.5, 2) - 3.0 * est.stderr_);

    const BesselSqParams q(1.0, 2.0, 1.0);
    const auto bens = srd::simulate_coupled({q.as_cir()}, grid, 3000, 909u, 2);
    const auto best = srd::mc_sup_second_moment(bens.front(), q);
    const auto [upper, lower] = srd::bessel_growth_bounds(q, 1.5);
    CHECK(best.mean <= upper + 3.0 * best.stderr_);
    CHECK(best.mean >= lower - 3.0 * best.stderr_);
}

TEST_CASE("bound report construction and serialization") {
    std::vector<double> times{0.5, 1.0};
    std::vector<srd::EstimateWithError> emp{{1.0, 0.125, 100}, {2.0, 0.125, 100}};
    std::vector<double> bounds{1.25, 2.25};
    const auto report = srd::BoundReport::build(times, emp, bounds, 3.0, {}, "demo");
    CHECK(report.pass);
    CHECK(report.slack_in_stderr[0] == doctest::Approx(2.0));

    const auto failing =
        srd::BoundReport::build(times, emp, std::vector<double>{0.5, 2.25}, 3.0);
    CHECK(!failing.pass);

    std::ostringstream os;
    report.write_csv(os);
    CHECK(os.str().rfind("time,empirical_mean,stderr,bound,pass\n", 0) == 0);
    CHECK(os.str().find("0.5,1,0.125,1.25,1") != std::string::npos);

    std::ostringstream js;
    report.write_json(js, "demo-params", 42u);
    CHECK(js.str().find("\"pass\": true") != std::string::npos);
    CHECK(js.str().find("\"seed\": 42") != std::string::npos);

    CHECK_THROWS_AS(srd::BoundReport::build(times, emp, std::vector<double>{1.0}, 3.0),
                    std::invalid_argument);
}
