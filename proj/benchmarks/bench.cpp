#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "cyclelab/estimator.hpp"
#include "cyclelab/graph.hpp"
#include "cyclelab/packing.hpp"
#include "cyclelab/rng.hpp"
#include "cyclelab/samplers.hpp"
#include "cyclelab/strip.hpp"

using namespace cyclelab;

namespace {

constexpr Seed kSeed{97, 0};

void BM_SampleGnp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const Graph g = sample_gnp(n, 10.0, Seed{97, stream++});
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGnp)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_TwoCoreOfGiant(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = sample_gnp(n, 10.0, kSeed);
  for (auto _ : state) {
    const Subgraph core = two_core_of_giant(g);
    benchmark::DoNotOptimize(core.graph.vertex_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TwoCoreOfGiant)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_Strip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Subgraph core = two_core_of_giant(sample_gnp(n, state.range(1), kSeed));
  for (auto _ : state) {
    const StripResult r = strip(core.graph);
    benchmark::DoNotOptimize(r.stripped.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Strip)->Args({100000, 3})->Args({100000, 10})->Args({1000000, 10})
    ->Unit(benchmark::kMillisecond);

// the packing workload as it actually occurs: many small stripped trees.
// below c ~ 8 the strip dissolves the whole core, so bench where V1 survives
void BM_PackStrippedTrees(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Subgraph core = two_core_of_giant(sample_gnp(n, state.range(1), kSeed));
  const StripResult r = strip(core.graph);
  const Classified cl = classify(core.graph, r);
  for (auto _ : state) {
    std::uint64_t total = 0;
    for (const TreeComponent& t : cl.trees) total += phi_tree(t).phi;
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cl.trees.size()));
}
BENCHMARK(BM_PackStrippedTrees)->Args({1000000, 10})->Args({200000, 8})
    ->Unit(benchmark::kMillisecond);

void BM_EstimateOnce(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    const EstimateRecord r = estimate_once(n, 10.0, Seed{97, stream++});
    benchmark::DoNotOptimize(r.l_hat_over_n);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateOnce)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
