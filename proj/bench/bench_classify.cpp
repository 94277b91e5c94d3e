// Serial reference against the OpenMP node classifier on generated trees.

#include <benchmark/benchmark.h>

#include "noarb/classify.hpp"
#include "noarb/generator.hpp"

namespace {

noarb::Market make_market(std::size_t depth, std::size_t branching, std::size_t dim) {
  noarb::GeneratorParams p;
  p.depth = depth;
  p.branching = branching;
  p.dim = dim;
  p.seed = 7;
  return noarb::Market(noarb::generate_market(p));
}

void BM_ClassifySerial(benchmark::State& state) {
  const auto m = make_market(state.range(0), 3, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(noarb::classify_nodes_serial(m));
  state.counters["nodes"] = static_cast<double>(m.nodes().size());
}

void BM_ClassifyParallel(benchmark::State& state) {
  const auto m = make_market(state.range(0), 3, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(noarb::classify_nodes_parallel(m));
  state.counters["nodes"] = static_cast<double>(m.nodes().size());
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Args({4, 2})->Args({5, 3})->Args({6, 3})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyParallel)->Args({4, 2})->Args({5, 3})->Args({6, 3})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
