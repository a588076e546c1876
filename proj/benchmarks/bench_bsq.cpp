#include <benchmark/benchmark.h>

#include "bsq/action.hpp"
#include "bsq/expression.hpp"
#include "bsq/gamma.hpp"
#include "bsq/lj_asymptotics.hpp"
#include "bsq/schrodinger.hpp"
#include "bsq/well_series.hpp"

using namespace bsq;

namespace {
const Constants kUnits{};
}

static void BM_GammaFn(benchmark::State& state) {
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_fn(x));
        x += 1e-9;
    }
}
BENCHMARK(BM_GammaFn);

static void BM_ParseExpression(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(parse_expression("50*(exp(-2*x) - 2*exp(-x)) + 0.5*x^2"));
}
BENCHMARK(BM_ParseExpression);

static void BM_ExpandWell_LJ(benchmark::State& state) {
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.03);
    for (auto _ : state)
        benchmark::DoNotOptimize(expand_well(lj));
}
BENCHMARK(BM_ExpandWell_LJ);

static void BM_ActionIntegral_Morse(benchmark::State& state) {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    for (auto _ : state)
        benchmark::DoNotOptimize(action_integral(mo, -20.0).action);
}
BENCHMARK(BM_ActionIntegral_Morse);

static void BM_ActionIntegral_LJNearThreshold(benchmark::State& state) {
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.03);
    for (auto _ : state)
        benchmark::DoNotOptimize(action_integral(lj, -1e-4).action);
}
BENCHMARK(BM_ActionIntegral_LJNearThreshold);

static void BM_Quantize_Morse(benchmark::State& state) {
    PotentialSpec mo{Morse{50.0, 1.0}, kUnits};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quantize(mo, n).energy);
}
BENCHMARK(BM_Quantize_Morse)->Arg(0)->Arg(5)->Arg(9);

static void BM_Quantize_LJ(benchmark::State& state) {
    const PotentialSpec lj = lj_spec_for_ratio(6, 0.03);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quantize(lj, n).energy);
}
BENCHMARK(BM_Quantize_LJ)->Arg(0)->Arg(12)->Arg(23);

static void BM_OracleSolve_Harmonic(benchmark::State& state) {
    PotentialSpec ho{Harmonic{1.0}, kUnits};
    const GridSettings grid{-10.0, 10.0, static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_bound_states(ho, grid, 3).levels.size());
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleSolve_Harmonic)->Arg(2001)->Arg(4001)->Arg(8001)->Complexity();

BENCHMARK_MAIN();
