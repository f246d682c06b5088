#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mo/core.hpp"
#include "mo/kernels.hpp"

namespace {

struct Setup {
  mo::GridMeasureSpace space;
  std::vector<double> mags;
  mo::OrliczGenerator gen;
};

Setup make(std::size_t n) {
  auto space = mo::GridMeasureSpace::uniform(n);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.0, 3.0);
  std::vector<double> mags(n);
  for (auto& x : mags) x = d(rng);
  return {space, mags, mo::gen::exp_minus_one()};
}

void BM_ModularSerial(benchmark::State& state) {
  const auto s = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mo::kernels::weighted_phi_sum_serial(s.gen, s.space, s.mags));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ModularParallel(benchmark::State& state) {
  const auto s = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mo::kernels::weighted_phi_sum_parallel(s.gen, s.space, s.mags));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

double score(std::size_t i) { return static_cast<double>((i * 2654435761u) % 1000003u); }

void BM_ArgmaxSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mo::kernels::argmax_scan_serial(n, score));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ArgmaxParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mo::kernels::argmax_scan_parallel(n, score));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ModularSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_ModularParallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(BM_ArgmaxSerial)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_ArgmaxParallel)->RangeMultiplier(8)->Range(1 << 12, 1 << 21);

BENCHMARK_MAIN();
