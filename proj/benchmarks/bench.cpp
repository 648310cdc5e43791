#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <set>

#include "hyperthresh/bundle.hpp"
#include "hyperthresh/construct.hpp"
#include "hyperthresh/cycles.hpp"
#include "hyperthresh/recognize.hpp"
#include "hyperthresh/spheregeo.hpp"

namespace ht = hyperthresh;

namespace {

ht::Hypergraph random_3graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ht::Vertex> pick(0, static_cast<ht::Vertex>(n - 1));
  std::set<ht::Edge> edges;
  while (edges.size() < m) {
    ht::Edge e{pick(rng), pick(rng), pick(rng)};
    std::sort(e.begin(), e.end());
    if (e[0] != e[1] && e[1] != e[2]) edges.insert(e);
  }
  return ht::Hypergraph::numbered(3, n, {edges.begin(), edges.end()});
}

ht::Hypergraph fstar() {
  return ht::Hypergraph::from_names(3, {"a1", "a2", "a3", "a4", "b1", "b2", "c1", "c2"},
                                    {{"a1", "a2", "a3"},
                                     {"a1", "b1", "c1"},
                                     {"a2", "b2", "c2"},
                                     {"a4", "b1", "c2"},
                                     {"a4", "b2", "c1"}});
}

void BM_EnumerateCycles(benchmark::State& state) {
  const auto h = random_3graph(12, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ht::enumerate_cycles(h, 4));
}
BENCHMARK(BM_EnumerateCycles)->Arg(8)->Arg(16)->Arg(24);

void BM_ClassifyFstar(benchmark::State& state) {
  const auto f = fstar();
  for (auto _ : state) benchmark::DoNotOptimize(ht::classify(f));
}
BENCHMARK(BM_ClassifyFstar);

void BM_ContainsCopy(benchmark::State& state) {
  const auto h = random_3graph(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)) * 4, 2);
  const auto f = fstar();
  for (auto _ : state) benchmark::DoNotOptimize(ht::contains_copy(h, f));
}
BENCHMARK(BM_ContainsCopy)->Arg(12)->Arg(24)->Arg(48);

void BM_DeleteShortCycles(benchmark::State& state) {
  const auto sample = ht::sample_points(10, 3, 3);
  const auto hp = ht::build_h_prime(sample, 3, 0.5);
  const auto sparse = ht::sparsen(ht::blowup(hp.graph, 2).graph, 0.02, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ht::delete_short_cycles(sparse, static_cast<std::size_t>(state.range(0))));
  state.counters["edges"] = static_cast<double>(sparse.num_edges());
}
BENCHMARK(BM_DeleteShortCycles)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_BuildG(benchmark::State& state) {
  ht::ConstructionParams p;
  p.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ht::build_g(std::nullopt, p));
}
BENCHMARK(BM_BuildG)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_CapEstimate(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ht::cap_estimate(3, 1.2, samples, 4));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CapEstimate)->Arg(10'000)->Arg(100'000);

}  // namespace
BENCHMARK_MAIN();
