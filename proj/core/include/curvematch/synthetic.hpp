#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvematch/curve.hpp"
#include "curvematch/mesh.hpp"

namespace curvematch::synthetic {

// Radius of a class's null shape along a unit direction.
double class_radius(int class_id, const Eigen::Vector3d& unit_direction);

TriMesh tetrahedron();             // regular, unit edge length
TriMesh icosahedron();             // unit circumradius
TriMesh icosphere(int subdivisions);  // unit sphere, 10*4^s + 2 vertices
TriMesh uv_sphere(int rings, int segments);  // rings*segments + 2 vertices

// Open cylinder grid with exactly rows*cols vertices (closed around, open at
// the ends); handy for size-controlled solver experiments.
TriMesh cylinder_grid(int rows, int cols, double radius = 1.0, double spacing = 0.35);

// Three smooth star-shaped families: 0 = ellipsoid, 1 = two-lobe peanut,
// 2 = three-lobe blob. instance < 0 gives the undeformed null shape; otherwise
// a seeded non-rigid radial wobble plus a rigid rotation is applied.
TriMesh class_shape(int class_id, int instance, int subdivisions, std::uint64_t seed = 0);

// Planar section of the null shape across its symmetry plane y = 0, sampled
// at m uniformly spaced directions.
Curve2D class_query(int class_id, int points);

struct RetrievalFixture {
  std::vector<TriMesh> targets;
  std::vector<int> target_classes;
  std::vector<std::string> target_names;
  std::vector<Curve2D> queries;
  std::vector<int> query_classes;
};

RetrievalFixture retrieval_fixture(int classes = 3, int per_class = 4, int subdivisions = 2,
                                   int query_points = 48, std::uint64_t seed = 0);

}  // namespace curvematch::synthetic
