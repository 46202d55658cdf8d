/**
 * Micro-benchmarks for the detection pipeline. Graph construction happens
 * outside the timed region; every run is seeded, so two invocations time
 * identical work. The ring and planted sweeps double n each step and fit
 * a complexity curve, backing the near-linear runtime expectation for
 * sparse graphs.
 */
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "gsbm/detect.hpp"
#include "gsbm/generators.hpp"
#include "gsbm/graph.hpp"
#include "gsbm/metrics.hpp"
#include "gsbm/partition.hpp"
#include "gsbm/preference.hpp"
#include "gsbm/random.hpp"

namespace {

using namespace gsbm;

void BM_GsbmP_RingOfCliques(benchmark::State& state) {
  int cliques = static_cast<int>(state.range(0));
  auto [g, planted] = gen_ring_of_cliques(cliques, 4);
  DetectConfig config;
  config.seed = 1;
  for (auto _ : state) {
    DetectResult res = detect_gsbm_p(g, config);
    benchmark::DoNotOptimize(res.objective);
  }
  state.counters["communities"] = cliques;
  state.SetComplexityN(g.vertex_count());
}
BENCHMARK(BM_GsbmP_RingOfCliques)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_GsbmP_Planted(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto [g, planted] = gen_planted(n, 4, 1.0, 0.1, 0.05, 3);
  DetectConfig config;
  config.seed = 1;
  for (auto _ : state) {
    DetectResult res = detect_gsbm_p(g, config);
    benchmark::DoNotOptimize(res.objective);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_GsbmP_Planted)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_GsbmP_PreferenceUpdate(benchmark::State& state) {
  auto [g, planted] = gen_planted(240, 4, 1.0, 0.1, 0.05, 3);
  DetectConfig config;
  config.seed = 1;
  config.preference_update =
      state.range(0) == 0 ? PreferenceUpdate::immediate : PreferenceUpdate::per_sweep;
  for (auto _ : state) {
    DetectResult res = detect_gsbm_p(g, config);
    benchmark::DoNotOptimize(res.objective);
  }
  state.SetLabel(state.range(0) == 0 ? "immediate" : "per-sweep");
}
BENCHMARK(BM_GsbmP_PreferenceUpdate)->Arg(0)->Arg(1);

void BM_Lpa_Planted(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto [g, planted] = gen_planted(n, 4, 1.0, 0.1, 0.05, 3);
  DetectConfig config;
  config.seed = 1;
  for (auto _ : state) {
    DetectResult res = detect_lpa(g, config);
    benchmark::DoNotOptimize(res.objective);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Lpa_Planted)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_LpaP_Planted(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto [g, planted] = gen_planted(n, 4, 1.0, 0.1, 0.05, 3);
  DetectConfig config;
  config.seed = 1;
  for (auto _ : state) {
    DetectResult res = detect_lpa_p(g, config);
    benchmark::DoNotOptimize(res.objective);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LpaP_Planted)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_PowerIterate(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng = make_rng(7);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int v = 1; v < m; ++v) edges.push_back({v - 1, v, weight(rng)});
  for (int u = 0; u < m; ++u) {
    for (int v = u + 2; v < m; ++v) {
      if (coin(rng) < 8.0 / m) edges.push_back({u, v, weight(rng)});
    }
  }
  WeightedGraph g = WeightedGraph::from_edges(m, std::move(edges));
  std::vector<int> members(m);
  for (int v = 0; v < m; ++v) members[v] = v;
  for (auto _ : state) {
    PowerResult res = power_iterate(g, members);
    benchmark::DoNotOptimize(res.eigenvalue);
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_PowerIterate)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Rrnmi(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng = make_rng(11);
  std::uniform_int_distribution<int> block(0, 9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<int> a(n), b(n);
  for (int v = 0; v < n; ++v) {
    a[v] = block(rng);
    b[v] = coin(rng) < 0.1 ? block(rng) : a[v];  // 10% relabeled
  }
  Partition truth(a);
  Partition pred(b);
  MetricConfig config;
  for (auto _ : state) {
    double value = rrnmi(truth, pred, config);
    benchmark::DoNotOptimize(value);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Rrnmi)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
