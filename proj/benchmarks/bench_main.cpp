#include <benchmark/benchmark.h>

#include "nestalg/decomposition.hpp"
#include "nestalg/extraction.hpp"
#include "nestalg/generators.hpp"
#include "nestalg/linalg.hpp"
#include "nestalg/matrix_map.hpp"
#include "nestalg/random.hpp"

using namespace nestalg;

static void BM_TraceNorm(benchmark::State& state) {
  Rng rng(1);
  const Index n = state.range(0);
  const ComplexMatrix a = random_gaussian_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(a));
}
BENCHMARK(BM_TraceNorm)->RangeMultiplier(4)->Range(8, 256);

static void BM_TriangularGrowth(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(triangular_growth_ratio(state.range(0)));
}
BENCHMARK(BM_TriangularGrowth)->RangeMultiplier(4)->Range(16, 256);

static void BM_MapNormEstimate(benchmark::State& state) {
  TransposeMap t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(map_trace_norm_lower_bound(t, 4, 7));
}
BENCHMARK(BM_MapNormEstimate)->Arg(8)->Arg(32);

static void BM_ExtractPlanted(benchmark::State& state) {
  const SchurMultiplierMap phi = planted_multiplier(state.range(0), Complex(0.5, 0.2), 0.05, 3);
  ExtractionBudget budget;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        find_scalar_compression(phi, 3, 0.2, InterleaveMode::kStrict, budget));
  }
}
BENCHMARK(BM_ExtractPlanted)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
