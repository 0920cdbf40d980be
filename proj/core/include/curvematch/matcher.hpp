#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvematch/geodesics.hpp"
#include "curvematch/product_graph.hpp"

namespace curvematch {

struct SolverStats {
  std::uint64_t paths_solved = 0;  // constrained runs / region solves
  std::uint64_t heap_pops = 0;
  double wall_seconds = 0.0;
};

// Directed product path; energy is the sum of its edge costs.
struct MatchPath {
  std::vector<ProductVertex> vertices;
  double energy = 0.0;

  bool closed(int m) const {
    return !vertices.empty() && vertices.front().layer == 0 && vertices.back().layer == m &&
           vertices.front().mesh_vertex == vertices.back().mesh_vertex;
  }
};

// Optimal closed product path with per-curve-vertex correspondences.
struct MatchResult {
  MatchPath path;
  std::vector<std::vector<int>> correspondences;  // mesh vertices matched to curve vertex i
  SolverStats stats;

  double energy() const { return path.energy; }
};

// Multi-source layered Dijkstra from {0} x R to {m} x R; endpoints need not
// share the mesh vertex. Ties break toward the lexicographically smallest
// (layer, mesh vertex).
MatchPath shortest_path_region(std::span<const int> region, const CostMatrix& cost,
                               const Curve2D& curve, const TriMesh& mesh,
                               SolverStats* stats = nullptr);

// Globally optimal closed path: one constrained run per initial mesh vertex,
// winner by lexicographically smallest (energy, start vertex).
MatchResult exhaustive_match(const CostMatrix& cost, const Curve2D& curve, const TriMesh& mesh,
                             int threads = 1);

// Branch-and-bound over initial-vertex regions ordered by open-path lower
// bounds; splits by geodesic proximity to the open path's two endpoints and
// keeps processing regions until the smallest bound reaches the incumbent.
// Returns the same energy as exhaustive_match.
MatchResult branch_and_bound_match(const CostMatrix& cost, const Curve2D& curve,
                                   const TriMesh& mesh, GeodesicCache& geodesics,
                                   int threads = 1);

// Groups a closed path's mesh vertices by curve vertex (layer mod m); the
// duplicated terminal vertex at layer m is dropped.
std::vector<std::vector<int>> path_correspondences(const MatchPath& path, int m);

// Re-sums edge costs along a path via product_edge_cost.
double recompute_energy(const MatchPath& path, const CostMatrix& cost, const Curve2D& curve,
                        const TriMesh& mesh);

std::string match_result_json(const MatchResult& result, bool include_stats = false);

}  // namespace curvematch
