#include <benchmark/benchmark.h>

#include "cyclescope/abelian.hpp"
#include "cyclescope/flow.hpp"

using namespace cyclescope;

static void BM_IDirect(benchmark::State& state) {
  const AbelianIntegral integral(random_spec(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(integral.direct(0.6).value);
}
BENCHMARK(BM_IDirect)->Arg(1)->Arg(3)->Arg(6);

static void BM_IReduced(benchmark::State& state) {
  const AbelianIntegral integral(random_spec(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(integral.reduced(0.6).value);
}
BENCHMARK(BM_IReduced)->Arg(1)->Arg(3)->Arg(6);

static void BM_ReturnMap(benchmark::State& state) {
  const PerturbationSpec spec = lambda_family(0.5);
  const RunConfig cfg{1e-3, 1e-10, 200000};
  for (auto _ : state) benchmark::DoNotOptimize(return_map(spec, cfg, 0.3).h1);
}
BENCHMARK(BM_ReturnMap);

static void BM_CountZeros(benchmark::State& state) {
  const PerturbationSpec spec = random_spec(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros(spec, 200).sign_change_count);
}
BENCHMARK(BM_CountZeros)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
