#pragma once

#include <vector>

#include "curvematch/cost.hpp"
#include "curvematch/curve.hpp"
#include "curvematch/mesh.hpp"

namespace curvematch {

// Vertex (layer, mesh_vertex) of the product graph of curve and mesh. Layers
// run 0..m; layer m is the duplicated copy of layer 0, so a closed matching is
// a path from (0, j) to (m, j).
struct ProductVertex {
  int layer = 0;
  int mesh_vertex = 0;

  bool operator==(const ProductVertex&) const = default;
};

// Directed edges keep or increment the layer: same-layer steps to mesh
// neighbors, a vertical step to (layer+1, j), and diagonal steps to
// (layer+1, j') for mesh neighbors j'. Layer m has no outgoing edges.
std::vector<ProductVertex> product_neighbors(const ProductVertex& v, const TriMesh& mesh, int m);

// (D[a_, a.j] + D[b_, b.j]) / 2 * |(x_a_, y_a.j) - (x_b_, y_b.j)| where
// i_ = layer mod m and the norm is Euclidean over the concatenated 2D and 3D
// coordinates. Throws NotAnEdge when (a, b) violates the edge rules.
double product_edge_cost(const ProductVertex& a, const ProductVertex& b, const CostMatrix& cost,
                         const Curve2D& curve, const TriMesh& mesh);

}  // namespace curvematch
