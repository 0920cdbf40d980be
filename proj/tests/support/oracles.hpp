#pragma once

// Independent oracles for derived expected values. These deliberately avoid
// the library's solver paths: plain Bellman-Ford instead of Dijkstra, cyclic
// Jacobi instead of the Lanczos/dense pipeline, exhaustive enumeration instead
// of layered shortest paths.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "curvematch/cost.hpp"
#include "curvematch/curve.hpp"
#include "curvematch/mesh.hpp"

namespace oracles {

Eigen::VectorXd bellman_ford(const curvematch::TriMesh& mesh, int source);

// Eigenpairs of the pencil (S, diag(mass)) via cyclic Jacobi on the
// symmetrized M^{-1/2} S M^{-1/2}. Ascending eigenvalues; eigenvectors
// mass-orthonormal.
struct DenseEigen {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};
DenseEigen jacobi_eigen(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass);

// Minimum cost over all closed simple product paths (layer 0 to layer m with
// equal mesh endpoint), enumerated by DFS with cost-based pruning.
double min_closed_path_energy(const curvematch::CostMatrix& cost,
                              const curvematch::Curve2D& curve,
                              const curvematch::TriMesh& mesh);

// Same, for open paths from {0} x region to {m} x region.
double min_region_path_energy(const std::vector<int>& region, const curvematch::CostMatrix& cost,
                              const curvematch::Curve2D& curve,
                              const curvematch::TriMesh& mesh);

// Minimum assignment cost over all permutations (r <= 9).
double brute_force_assignment(const Eigen::MatrixXd& cost);

// deterministic test data helpers
curvematch::Curve2D regular_polygon(int m, double radius = 1.0);
curvematch::CostMatrix random_cost(int m, int n, std::uint64_t seed, double tau = 1e3);
curvematch::TriMesh zigzag_strip(int vertices, double step = 1.0);

// splitmix64-based uniform doubles in [0, 1); deterministic across platforms
struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace oracles
