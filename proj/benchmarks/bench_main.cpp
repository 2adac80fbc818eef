#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "mbrgg/harness.hpp"
#include "mbrgg/packing.hpp"
#include "mbrgg/rgg.hpp"
#include "mbrgg/solver.hpp"

using namespace mbrgg;

namespace {

// Radius at the connectivity threshold, where the interesting graphs live.
double conn_radius(double n) { return ThresholdScaling::at(ThresholdGame::connectivity, n, 0).r; }

void BM_BuildGraph(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, n, 1));
  const double r = conn_radius(n);
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(ps, r));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EdgeProcess(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  auto ps = std::make_shared<PointSet>(sample(SamplingModel::binomial, n, 2));
  const double cap = default_r_cap(ps->size());
  for (auto _ : state) benchmark::DoNotOptimize(EdgeProcess(ps, cap).edges().size());
}
BENCHMARK(BM_EdgeProcess)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TwoTreePacking(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  auto g = build_graph(sample(SamplingModel::binomial, n, 3), 1.5 * conn_radius(n));
  for (auto _ : state) benchmark::DoNotOptimize(two_tree_packing(g.graph()));
}
BENCHMARK(BM_TwoTreePacking)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

// Fresh solver each iteration so the memo does not carry over.
void BM_SolverTriangleK6(benchmark::State& state) {
  for (auto _ : state) {
    auto s = h_game_solver(SmallGraph::complete(3));
    benchmark::DoNotOptimize(s->solve(SmallGraph::complete(6)));
  }
}
BENCHMARK(BM_SolverTriangleK6)->Unit(benchmark::kMillisecond);

void BM_LowDegreeStats(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  auto ps = sample(SamplingModel::binomial, n, 4);
  const double r = conn_radius(n);
  for (auto _ : state) benchmark::DoNotOptimize(low_degree_stats(ps, r));
}
BENCHMARK(BM_LowDegreeStats)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
