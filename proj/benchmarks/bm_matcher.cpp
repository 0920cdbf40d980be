#include <benchmark/benchmark.h>

#include <random>

#include "curvematch/matcher.hpp"
#include "curvematch/synthetic.hpp"

namespace bm = benchmark;
using namespace curvematch;

namespace {

Curve2D regular_polygon(int m) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double a = 2.0 * M_PI * i / m;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return make_curve(std::move(pts));
}

CostMatrix random_cost(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  CostMatrix cost;
  cost.tau = 1e3;
  cost.D.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) cost.D(i, j) = uni(rng);
  return cost;
}

void BM_ShortestPathRegion(bm::State& st) {
  const int m = static_cast<int>(st.range(0));
  const int n = static_cast<int>(st.range(1));
  const TriMesh mesh = synthetic::cylinder_grid(n / 25, 25);
  const Curve2D curve = regular_polygon(m);
  const CostMatrix cost = random_cost(m, mesh.vertex_count(), 7);
  std::vector<int> region(mesh.vertex_count());
  for (int j = 0; j < mesh.vertex_count(); ++j) region[j] = j;

  for (auto _ : st) {
    auto path = shortest_path_region(region, cost, curve, mesh);
    bm::DoNotOptimize(path.energy);
  }
}

void BM_ExhaustiveMatch(bm::State& st) {
  const int m = static_cast<int>(st.range(0));
  const int n = static_cast<int>(st.range(1));
  const TriMesh mesh = synthetic::cylinder_grid(n / 25, 25);
  const Curve2D curve = regular_polygon(m);
  const CostMatrix cost = random_cost(m, mesh.vertex_count(), 7);

  for (auto _ : st) {
    auto result = exhaustive_match(cost, curve, mesh);
    bm::DoNotOptimize(result.path.energy);
  }
}

void BM_BranchAndBoundMatch(bm::State& st) {
  const int m = static_cast<int>(st.range(0));
  const int n = static_cast<int>(st.range(1));
  const TriMesh mesh = synthetic::cylinder_grid(n / 25, 25);
  const Curve2D curve = regular_polygon(m);
  const CostMatrix cost = random_cost(m, mesh.vertex_count(), 7);

  for (auto _ : st) {
    GeodesicCache geodesics(mesh);
    auto result = branch_and_bound_match(cost, curve, mesh, geodesics);
    bm::DoNotOptimize(result.path.energy);
  }
}

}  // namespace

BENCHMARK(BM_ShortestPathRegion)->Args({50, 500})->Args({100, 500})->Unit(bm::kMillisecond);
BENCHMARK(BM_ExhaustiveMatch)->Args({25, 250})->Args({50, 250})->Unit(bm::kMillisecond);
BENCHMARK(BM_BranchAndBoundMatch)->Args({25, 250})->Args({50, 250})->Unit(bm::kMillisecond);

BENCHMARK_MAIN();
