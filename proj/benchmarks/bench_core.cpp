#include <benchmark/benchmark.h>

#include <random>

#include "vocbench/calibration.hpp"
#include "vocbench/threshold.hpp"
#include "vocbench/voc.hpp"

namespace {

using namespace vocbench;

ScoredDataset make_dataset(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PredictionRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = u(rng);
    const bool hit = u(rng) < c;
    records.push_back({c, 1, hit ? 1 : 2, 1.0});
  }
  return ScoredDataset(std::move(records));
}

void BM_BuildDataset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_dataset(static_cast<std::size_t>(state.range(0)), 1));
  state.SetComplexityN(state.range(0));
}

void BM_OptimizeThreshold(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_threshold(d, Penalty(1.0)));
  state.SetComplexityN(state.range(0));
}

void BM_OmegaAwareVoc(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(omega_aware_voc(d));
  state.SetComplexityN(state.range(0));
}

void BM_IsotonicRescale(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(isotonic_rescale(d));
  state.SetComplexityN(state.range(0));
}

void BM_Ece(benchmark::State& state) {
  const auto d = make_dataset(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(ece(d));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_BuildDataset)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();
BENCHMARK(BM_OptimizeThreshold)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();
BENCHMARK(BM_OmegaAwareVoc)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();
BENCHMARK(BM_IsotonicRescale)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();
BENCHMARK(BM_Ece)->RangeMultiplier(10)->Range(1000, 1000000)->Complexity();
BENCHMARK_MAIN();
