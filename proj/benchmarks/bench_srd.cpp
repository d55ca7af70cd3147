#include <benchmark/benchmark.h>

#include <cmath>

#include "srd/bounds.hpp"
#include "srd/model.hpp"
#include "srd/rng.hpp"
#include "srd/simulate.hpp"
#include "srd/specfun.hpp"

namespace {

void BM_PhiloxU64(benchmark::State& state) {
    srd::PhiloxEngine rng(1u, 0u);
    for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_PhiloxU64);

void BM_PhiloxNormal(benchmark::State& state) {
    srd::PhiloxEngine rng(1u, 0u);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_PhiloxNormal);

void BM_BesselISeries(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(srd::bessel_i(2.5, x));
}
BENCHMARK(BM_BesselISeries)->Arg(1)->Arg(10)->Arg(25);

void BM_BesselIAsymptotic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(srd::bessel_i_log(2.5, 250.0));
}
BENCHMARK(BM_BesselIAsymptotic);

void BM_Kummer1F1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(srd::kummer_1f1(4.5, 4.0, 7.0));
}
BENCHMARK(BM_Kummer1F1);

void BM_RegLowerIncGamma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(srd::reg_lower_inc_gamma(4.0, 4.0));
}
BENCHMARK(BM_RegLowerIncGamma);

void BM_CirDensity(benchmark::State& state) {
    const srd::CirParams p(1.0, 2.0, 1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(srd::cir_density(p, 0.5, 1.3));
}
BENCHMARK(BM_CirDensity);

void BM_CirExactTransition(benchmark::State& state) {
    const srd::CirParams p(1.0, 2.0, 1.0, 1.0);
    srd::PhiloxEngine rng(1u, 0u);
    double x = p.x0;
    for (auto _ : state) {
        x = srd::cir_exact_transition(p, x, 0.01, rng);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_CirExactTransition);

void BM_CoupledEulerPath(benchmark::State& state) {
    const std::vector<srd::CirParams> family{
        {1.0, 1.0, 0.0, 1.0}, {1.0, 1.0, 0.5, 1.0}, {1.0, 1.0, 0.1, 1.0}};
    const srd::TimeGrid grid = srd::TimeGrid::uniform(1.0, 256);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(srd::simulate_coupled(family, grid, 64, seed++, 1));
    }
    state.SetItemsProcessed(state.iterations() * 64 * 256 * family.size());
}
BENCHMARK(BM_CoupledEulerPath);

void BM_SmoothedBesselTerminal(benchmark::State& state) {
    const srd::TimeGrid grid = srd::TimeGrid::uniform(10.0, 1000);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            srd::simulate_smoothed_bessel_terminal(1.0, 1.0, 1.0, grid, 64, seed++, 1));
    }
    state.SetItemsProcessed(state.iterations() * 64 * 1000);
}
BENCHMARK(BM_SmoothedBesselTerminal);

}  // namespace

BENCHMARK_MAIN();
