#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "curvematch/curve.hpp"

namespace curvematch {

// Triangulation of the planar region bounded by a Curve2D. Curve vertex i is
// the solid vertex boundary_map[i]; boundary segments of the curve appear as
// mesh edges (refinement inserts interior Steiner points only).
struct PlanarSolidMesh {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> faces;   // CCW
  std::vector<int> boundary_map;
  std::vector<std::vector<int>> adjacency; // sorted neighbor lists

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  double face_area(int f) const;
  double total_area() const;
};

// Constrained Delaunay triangulation of the polygon interior, refined with
// interior Steiner points until every triangle area is <= max_area, plus a
// best-effort 20-degree minimum-angle pass.
PlanarSolidMesh tessellate_solid(const Curve2D& curve, double max_area);

// Default refinement target: polygon area / 1000.
double default_max_area(const Curve2D& curve);

}  // namespace curvematch
