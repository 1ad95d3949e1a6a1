#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "hopcorr/correlation.hpp"
#include "hopcorr/exact.hpp"
#include "hopcorr/meanfield.hpp"
#include "hopcorr/montecarlo.hpp"
#include "hopcorr/params.hpp"
#include "hopcorr/patterns.hpp"
#include "hopcorr/phases.hpp"
#include "hopcorr/spin_system.hpp"

using namespace hopcorr;

namespace {

Magnetization test_state(int P) {
    Magnetization M(P, 0.05);
    M[0] = 0.8;
    if (P > 1) M[1] = M[P - 1] = 0.2;
    return M;
}

void BM_RhsRel(benchmark::State& state) {
    const int P = static_cast<int>(state.range(0));
    const ModelParams p = ModelParams::from_temperature(P, 0.3, 0.5);
    const Magnetization M = test_state(P);
    for (auto _ : state) benchmark::DoNotOptimize(rhs_rel_corr(M, p));
}
BENCHMARK(BM_RhsRel)->Arg(5)->Arg(8)->Arg(10)->Arg(12);

void BM_SolvePure(benchmark::State& state) {
    const ModelParams p = ModelParams::from_temperature(5, 0.3, 0.5);
    Magnetization pure(5, 0.0);
    pure[0] = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(solve(p, pure, SolverConfig{}));
}
BENCHMARK(BM_SolvePure);

void BM_MultiStart(benchmark::State& state) {
    const ModelParams p = ModelParams::from_temperature(5, 0.3, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(multi_start(p, SolverConfig{}));
}
BENCHMARK(BM_MultiStart);

void BM_ExactPressure(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    const PatternSet ps = sample_patterns(N, 2, 11);
    const ModelParams p = ModelParams::from_temperature(2, 0.3, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(exact_pressure(ps, p));
    state.SetComplexityN(N);
}
BENCHMARK(BM_ExactPressure)->Arg(12)->Arg(16)->Arg(20);

void BM_McSweep(benchmark::State& state) {
    const int N = 1000, P = 3;
    const ModelParams p = ModelParams::from_temperature(P, 0.2, 0.5);
    const auto ps = std::make_shared<PatternSet>(sample_patterns(N, P, 13));
    McConfig cfg;
    cfg.N = N;
    cfg.sweeps = 1;
    cfg.burn_in = 0;
    cfg.seed = 17;
    for (auto _ : state) benchmark::DoNotOptimize(run(p, SpinSystem::aligned(ps, 0), cfg));
    state.SetItemsProcessed(state.iterations() * N);
}
BENCHMARK(BM_McSweep);

void BM_Spectrum(benchmark::State& state) {
    const int P = static_cast<int>(state.range(0));
    const CorrelationMatrix X = build_x(P, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(X));
}
BENCHMARK(BM_Spectrum)->Arg(8)->Arg(16)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
