#include <benchmark/benchmark.h>

#include "lisdev/lis.hpp"
#include "lisdev/model.hpp"
#include "lisdev/tableaux.hpp"
#include "lisdev/variational.hpp"

namespace {

void BM_LisLength(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const lisdev::PointSample sample = lisdev::sample_iid(lisdev::uniform_density(2), n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lisdev::lis_size(sample.points));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LisLength)->RangeMultiplier(10)->Range(100, 1000000)->Complexity(benchmark::oNLogN);

void BM_ExactDistribution(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lisdev::exact_lmax_distribution(n).total());
}
BENCHMARK(BM_ExactDistribution)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SolveJbar(benchmark::State& state) {
  const lisdev::Density density = lisdev::strip_depleted_density(64, 0.3, 0.5);
  const lisdev::SolverConfig config{1.0 / 64.0, 1.0 / static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(lisdev::solve_jbar(density, config).j_high);
}
BENCHMARK(BM_SolveJbar)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
