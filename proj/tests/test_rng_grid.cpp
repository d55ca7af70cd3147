#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "srd/grid.hpp"
#include "srd/rng.hpp"
#include "srd/stats.hpp"

using srd::PhiloxEngine;
using srd::TimeGrid;

namespace {

// Newton refinement of the normal quantile from the erfc-based CDF,
// independent of the AS241 rational approximations.
double quantile_oracle(double p) {
    double z = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
        const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        const double step = (cdf - p) / pdf;
        z -= step;
        if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(z))) break;
    }
    return z;
}

}  // namespace

TEST_CASE("philox reproducibility and stream separation") {
    PhiloxEngine a(42u, 7u), b(42u, 7u), c(42u, 8u), d(43u, 7u);
    bool all_equal = true, c_differs = false, d_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a(), vb = b(), vc = c(), vd = d();
        all_equal = all_equal && (va == vb);
        c_differs = c_differs || (vc != va);
        d_differs = d_differs || (vd != va);
    }
    CHECK(all_equal);
    CHECK(c_differs);
    CHECK(d_differs);
}

TEST_CASE("philox uniforms look uniform") {
    PhiloxEngine rng(1u, 0u);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));   // 4 sigma
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("inverse normal CDF matches the Newton oracle") {
    CHECK(srd::inverse_normal_cdf(0.5) == 0.0);
    CHECK(srd::inverse_normal_cdf(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-12));
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-6}) {
        const double got = srd::inverse_normal_cdf(p);
        const double want = quantile_oracle(p);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
        // symmetry where 1 - p is exactly representable
        if (p >= 1e-6) {
            CHECK(srd::inverse_normal_cdf(1.0 - p) ==
                  doctest::Approx(-got).epsilon(1e-9).scale(1.0));
        }
    }
    CHECK_THROWS_AS(srd::inverse_normal_cdf(0.0), std::domain_error);
    CHECK_THROWS_AS(srd::inverse_normal_cdf(1.0), std::domain_error);
}

TEST_CASE("normal draws have the right first moments") {
    PhiloxEngine rng(5u, 0u);
    const int n = 100000;
    std::vector<double> z(n);
    for (auto& v : z) v = rng.normal();
    const auto est = srd::EstimateWithError::from_samples(z);
    CHECK(std::fabs(est.mean) < 4.0 * est.stderr_);
    double s2 = 0.0;
    for (double v : z) s2 += v * v;
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("time grid construction and validation") {
    const TimeGrid g = TimeGrid::uniform(2.0, 8);
    CHECK(g.size() == 9);
    CHECK(g.horizon() == 2.0);
    REQUIRE(g.uniform_step().has_value());
    CHECK(*g.uniform_step() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(g.index_of(0.5) == 2);
    CHECK_THROWS_AS(g.index_of(0.51), std::invalid_argument);

    CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0, 2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0}), std::invalid_argument);

    const TimeGrid nonuni(std::vector<double>{0.0, 0.1, 0.3, 0.7});
    CHECK(!nonuni.uniform_step().has_value());
}

TEST_CASE("uniform-then-geometric grid") {
    const TimeGrid g = TimeGrid::uniform_then_geometric(1.0, 0.1, 1.2, 50.0);
    CHECK(g[0] == 0.0);
    CHECK(g.horizon() == 50.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK_THROWS_AS(TimeGrid::uniform_then_geometric(1.0, 0.1, 0.9, 50.0),
                    std::invalid_argument);
}
