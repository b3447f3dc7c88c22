// Serial reference vs OpenMP kernels. Pass --benchmark_filter=... to narrow.
#include <benchmark/benchmark.h>

#include <random>

#include "monotone/estimators.hpp"
#include "monotone/isotonic.hpp"
#include "monotone/montecarlo.hpp"
#include "monotone/random.hpp"
#include "monotone/rearrangement.hpp"

using namespace monotone;

namespace {

GriddedFunction noisy_surface(std::size_t n) {
  Rng rng(1);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v[i * n + j] = 0.01 * static_cast<double>(i + j) + z(rng);
  return GriddedFunction({Axis::linspace(0, 1, n), Axis::linspace(0, 1, n)}, std::move(v));
}

Execution mode(const benchmark::State& s) { return s.range(1) ? Execution::parallel : Execution::serial; }

void BM_rearrange_average(benchmark::State& state) {
  const auto f = noisy_surface(static_cast<std::size_t>(state.range(0)));
  const auto set = OrderingSet::all(2);
  for (auto _ : state) benchmark::DoNotOptimize(rearrange_average(f, set, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}

void BM_isotonize_average(benchmark::State& state) {
  const auto f = noisy_surface(static_cast<std::size_t>(state.range(0)));
  const auto set = OrderingSet::all(2);
  for (auto _ : state) benchmark::DoNotOptimize(isotonize_average(f, set, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}

void BM_bootstrap(benchmark::State& state) {
  const auto cfg = mc::McConfig::desk_scale();
  const auto data = mc::simulate_rep(cfg, 0);
  auto spec = cfg.estimators[static_cast<std::size_t>(state.range(0))];
  spec.eval_axis = cfg.eval_axis();
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap(data, spec, 100, 7, mode(state)));
}

void BM_mc_table(benchmark::State& state) {
  auto cfg = mc::McConfig::desk_scale();
  cfg.reps = 8;
  const auto tables = mc::Tables::only(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mc::run_experiment(cfg, tables, mode(state)));
}

}  // namespace

BENCHMARK(BM_rearrange_average)->ArgsProduct({{64, 256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_isotonize_average)->ArgsProduct({{64, 256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bootstrap)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_table)->ArgsProduct({{1, 3}, {0, 1}})->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
