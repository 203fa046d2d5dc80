#include <benchmark/benchmark.h>

#include <random>

#include "arena/metrics.hpp"
#include "arena/model.hpp"

namespace {

void BM_Run(benchmark::State& state) {
    arena::ModelParams params;
    params.alpha = 2.0;
    params.n = static_cast<int>(state.range(0));
    params.c = 12.0;
    params.iterations = 10000;
    params.seed = 7;
    for (auto _ : state) {
        arena::RunTrace trace = arena::run(params);
        benchmark::DoNotOptimize(trace.visibility.back());
    }
}
BENCHMARK(BM_Run)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
    arena::ModelParams params;
    params.n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    auto init = arena::init_arena(params, rng);
    std::vector<double> noise(params.n, 0.0);
    std::normal_distribution<double> gauss(0.0, arena::noise_sigma(params));
    for (auto _ : state) {
        for (double& x : noise) x = gauss(rng);
        arena::step(init.state, params, noise);
        benchmark::DoNotOptimize(init.state.current.data());
    }
}
BENCHMARK(BM_Step)->Arg(20)->Arg(200);

void BM_Summarize(benchmark::State& state) {
    arena::ModelParams params;
    params.alpha = 2.0;
    params.iterations = 10000;
    params.seed = 3;
    arena::RunTrace trace = arena::run(params);
    for (auto _ : state) {
        arena::MetricsSummary s = arena::summarize(trace);
        benchmark::DoNotOptimize(s.mean_gini);
    }
}
BENCHMARK(BM_Summarize)->Unit(benchmark::kMillisecond);

void BM_Gini(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(state.range(0)));
    for (double& x : values) x = uniform(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(arena::gini(values));
}
BENCHMARK(BM_Gini)->Arg(20)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
