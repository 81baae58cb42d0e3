#include <benchmark/benchmark.h>

#include "smlab/analysis.hpp"
#include "smlab/bounds.hpp"
#include "smlab/engine.hpp"

namespace {

void BM_Run(benchmark::State& state) {
    const smlab::SimConfig cfg{smlab::make_linear(1, 1), 1.0, 0.95, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(smlab::run(cfg));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Run)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_KeyQuantities(benchmark::State& state) {
    const auto q = smlab::make_q_epsilon(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smlab::key_quantities(q, 1.0));
    }
}
BENCHMARK(BM_KeyQuantities);

void BM_ForbiddenInterval(benchmark::State& state) {
    const auto q = smlab::make_linear(1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smlab::forbidden_interval(q, 1.0, 0.7, 50));
    }
}
BENCHMARK(BM_ForbiddenInterval);

void BM_Sweep(benchmark::State& state) {
    const auto q = smlab::make_linear(1, 1);
    const auto grid = smlab::delta_grid(0, 1, 101);
    smlab::SweepOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(smlab::delta_sweep(q, 1.0, grid, 100, options));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime();

void BM_Validate(benchmark::State& state) {
    const auto q = smlab::make_linear(1, 1);
    const auto kq = smlab::key_quantities(q, 1.0);
    const auto sim = smlab::simulate({q, 1.0, 0.9, 1000});
    for (auto _ : state) {
        benchmark::DoNotOptimize(smlab::validate(sim.records, sim.states, kq));
    }
}
BENCHMARK(BM_Validate);

}  // namespace

BENCHMARK_MAIN();
