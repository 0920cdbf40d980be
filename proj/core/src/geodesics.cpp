#include "curvematch/geodesics.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "curvematch/errors.hpp"
#include "curvematch/parallel.hpp"

namespace curvematch {

namespace {

template <typename Length>
void dijkstra_graph(const std::vector<std::vector<int>>& adjacency, const Length& edge_length,
                    int source, Eigen::VectorXd& dist) {
  const int n = static_cast<int>(adjacency.size());
  dist.setConstant(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int w : adjacency[v]) {
      const double nd = d + edge_length(v, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
}

template <typename Length>
double graph_diameter(const std::vector<std::vector<int>>& adjacency, const Length& edge_length,
                      DiameterMode mode, int threads) {
  const int n = static_cast<int>(adjacency.size());
  bool exact = true;
  switch (mode) {
    case DiameterMode::Auto: exact = n <= 2000; break;
    case DiameterMode::Exact: exact = true; break;
    case DiameterMode::Sampled: exact = false; break;
  }

  if (exact) {
    std::vector<double> per_source(n, 0.0);
    parallel_for(0, n, threads, [&](int s) {
      Eigen::VectorXd dist;
      dijkstra_graph(adjacency, edge_length, s, dist);
      per_source[s] = dist.maxCoeff();
    });
    double best = 0.0;
    for (double d : per_source) best = std::max(best, d);
    return best;
  }

  // Farthest-point sampling: ceil(sqrt(n)) sources starting from vertex 0;
  // the result is a documented lower bound on the true diameter.
  const int samples = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  Eigen::VectorXd min_dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  Eigen::VectorXd dist;
  double best = 0.0;
  int source = 0;
  for (int s = 0; s < samples; ++s) {
    dijkstra_graph(adjacency, edge_length, source, dist);
    best = std::max(best, dist.maxCoeff());
    min_dist = min_dist.cwiseMin(dist);
    int next = 0;
    double far = -1.0;
    for (int v = 0; v < n; ++v) {
      if (min_dist[v] > far) {
        far = min_dist[v];
        next = v;
      }
    }
    source = next;
  }
  return best;
}

}  // namespace

GeodesicField geodesic_distances(const TriMesh& mesh, int source) {
  require(source >= 0 && source < mesh.vertex_count(), ErrorCode::InvalidArgument,
          "geodesic source out of range");
  GeodesicField field;
  field.source = source;
  dijkstra_graph(
      mesh.adjacency,
      [&](int v, int w) { return (mesh.vertices[w] - mesh.vertices[v]).norm(); }, source,
      field.dist);
  return field;
}

double geodesic_diameter(const TriMesh& mesh, DiameterMode mode, int threads) {
  return graph_diameter(
      mesh.adjacency,
      [&](int v, int w) { return (mesh.vertices[w] - mesh.vertices[v]).norm(); }, mode, threads);
}

double geodesic_diameter(const PlanarSolidMesh& solid, DiameterMode mode, int threads) {
  return graph_diameter(
      solid.adjacency,
      [&](int v, int w) { return (solid.vertices[w] - solid.vertices[v]).norm(); }, mode,
      threads);
}

const Eigen::VectorXd& GeodesicCache::distances_from(int source) {
  auto it = cache_.find(source);
  if (it == cache_.end()) {
    it = cache_.emplace(source, geodesic_distances(*mesh_, source).dist).first;
  }
  return it->second;
}

}  // namespace curvematch
