#include <benchmark/benchmark.h>

#include <random>

#include "ghl/blocks.hpp"
#include "ghl/gromov_hausdorff.hpp"
#include "ghl/harness.hpp"
#include "ghl/surgery.hpp"

namespace {

void BM_SphereMetric(benchmark::State& state) {
  const auto mesh = ghl::make_surface(ghl::SurfaceKind::Sphere, static_cast<int>(state.range(0)));
  const auto graph = mesh.edge_graph();
  for (auto _ : state) benchmark::DoNotOptimize(ghl::shortest_path_metric(graph));
  state.counters["points"] = static_cast<double>(mesh.vertex_count());
}
BENCHMARK(BM_SphereMetric)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

ghl::FiniteLengthSpace random_space(std::mt19937_64& rng, std::size_t n, const std::string& prefix) {
  std::vector<ghl::Edge> edges;
  std::uniform_real_distribution<double> len(0.1, 2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, len(rng)});
  std::vector<ghl::PointId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ghl::shortest_path_metric(ghl::MetricGraph(ids, edges));
}

void BM_GhBruteforce(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) == 0 ? ghl::GhSearch::Exhaustive : ghl::GhSearch::BranchAndBound;
  const auto x = random_space(rng, n, "x");
  const auto y = random_space(rng, n, "y");
  for (auto _ : state) benchmark::DoNotOptimize(ghl::gh_bruteforce(x, y, mode));
}
BENCHMARK(BM_GhBruteforce)->Args({3, 0})->Args({4, 0})->Args({3, 1})->Args({4, 1})->Args({5, 1});

void BM_BlockDecomposition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<ghl::PointId> ids;
  std::vector<ghl::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  for (std::size_t v = 1; v < n; ++v) edges.push_back({rng() % v, v, 1.0});
  for (std::size_t e = 0; e < n / 4; ++e) {
    auto a = rng() % n, b = rng() % n;
    if (a != b) edges.push_back({a, b, 1.0});
  }
  const ghl::MetricGraph graph(ids, edges);
  for (auto _ : state) benchmark::DoNotOptimize(ghl::block_decomposition(graph));
}
BENCHMARK(BM_BlockDecomposition)->Range(64, 4096);

void BM_ConnectedSum(benchmark::State& state) {
  const auto sphere = ghl::make_surface(ghl::SurfaceKind::Sphere, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ghl::connected_sum(sphere, 0, sphere, 0, 0.5));
}
BENCHMARK(BM_ConnectedSum)->DenseRange(1, 3);

void BM_FamilyF1(benchmark::State& state) {
  ghl::FamilySpec spec;
  spec.n_max = 8;
  spec.record_timing = false;
  for (auto _ : state) benchmark::DoNotOptimize(ghl::run_family(spec));
}
BENCHMARK(BM_FamilyF1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
