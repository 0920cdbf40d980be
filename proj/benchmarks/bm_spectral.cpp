#include <benchmark/benchmark.h>

#include "curvematch/descriptors.hpp"
#include "curvematch/laplacian.hpp"
#include "curvematch/spectral.hpp"
#include "curvematch/synthetic.hpp"

namespace bm = benchmark;
using namespace curvematch;

namespace {

void BM_BuildLaplacian(bm::State& st) {
  const TriMesh mesh = synthetic::icosphere(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto lap = build_laplacian_3d(mesh);
    bm::DoNotOptimize(lap.mass.sum());
  }
}

void BM_Eigendecompose(bm::State& st) {
  const TriMesh mesh = synthetic::icosphere(static_cast<int>(st.range(0)));
  const LaplacianPair lap = build_laplacian_3d(mesh);
  const int k = static_cast<int>(st.range(1));
  for (auto _ : st) {
    auto basis = eigendecompose(lap, k);
    bm::DoNotOptimize(basis.eigenvalues.sum());
  }
}

void BM_Descriptors(bm::State& st) {
  const TriMesh mesh = synthetic::icosphere(static_cast<int>(st.range(0)));
  const SpectralBasis basis = eigendecompose(build_laplacian_3d(mesh), 25);
  for (auto _ : st) {
    auto hks = compute_hks(basis, 100);
    auto wks = compute_wks(basis, 100);
    bm::DoNotOptimize(hks.values.sum() + wks.values.sum());
  }
}

}  // namespace

BENCHMARK(BM_BuildLaplacian)->Arg(2)->Arg(3)->Unit(bm::kMillisecond);
BENCHMARK(BM_Eigendecompose)->Args({2, 25})->Args({3, 25})->Unit(bm::kMillisecond);
BENCHMARK(BM_Descriptors)->Arg(2)->Arg(3)->Unit(bm::kMillisecond);

BENCHMARK_MAIN();
