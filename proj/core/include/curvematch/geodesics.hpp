#pragma once

#include <Eigen/Core>
#include <unordered_map>

#include "curvematch/mesh.hpp"
#include "curvematch/tessellate.hpp"

namespace curvematch {

// Single-source graph geodesics on the mesh edge graph with Euclidean edge
// lengths (Dijkstra).
struct GeodesicField {
  int source = 0;
  Eigen::VectorXd dist;
};

GeodesicField geodesic_distances(const TriMesh& mesh, int source);

enum class DiameterMode {
  Auto,     // exact up to 2000 vertices, sampled beyond
  Exact,    // max over all sources
  Sampled,  // max over ceil(sqrt(n)) farthest-point-sampled sources (lower bound)
};

double geodesic_diameter(const TriMesh& mesh, DiameterMode mode = DiameterMode::Auto,
                         int threads = 0);

// Same graph-geodesic diameter on a solid's triangulation edge graph.
double geodesic_diameter(const PlanarSolidMesh& solid, DiameterMode mode = DiameterMode::Auto,
                         int threads = 0);

// Memoized per-source distance fields, shared by the branch-and-bound split
// rule and the evaluation metric.
class GeodesicCache {
 public:
  explicit GeodesicCache(const TriMesh& mesh) : mesh_(&mesh) {}

  const Eigen::VectorXd& distances_from(int source);
  const TriMesh& mesh() const { return *mesh_; }

 private:
  const TriMesh* mesh_;
  std::unordered_map<int, Eigen::VectorXd> cache_;
};

}  // namespace curvematch
