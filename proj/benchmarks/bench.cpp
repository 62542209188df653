#include <benchmark/benchmark.h>

#include "cadist/catalog.hpp"
#include "cadist/filling.hpp"
#include "cadist/profile.hpp"

using namespace cadist;

static void BM_MultiplierProduct(benchmark::State& state) {
  SyncAutomaton inc = builders::zigzag_increment();
  for (auto _ : state) benchmark::DoNotOptimize(product(inc, inc).trimmed());
}
BENCHMARK(BM_MultiplierProduct);

static void BM_ComputeH_ZigzagZ(benchmark::State& state) {
  CayleyAutomaticStructure s = make_structure("Z-zigzag");
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_h(s, n));
}
BENCHMARK(BM_ComputeH_ZigzagZ)->Arg(8)->Arg(12);

static void BM_CorridorFill_Z2(benchmark::State& state) {
  CayleyAutomaticStructure s = make_structure("Z2-zigzag");
  Word loop = parse_word(s.generators.alphabet, "xxyyXXYY");
  for (auto _ : state) benchmark::DoNotOptimize(corridor_fill(s, loop));
}
BENCHMARK(BM_CorridorFill_Z2);

BENCHMARK_MAIN();
