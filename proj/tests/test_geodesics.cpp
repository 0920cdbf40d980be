#include <doctest.h>

#include "curvematch/geodesics.hpp"
#include "curvematch/synthetic.hpp"
#include "support/oracles.hpp"

using namespace curvematch;

TEST_SUITE("geodesics") {

TEST_CASE("unit tetrahedron distances") {
  const TriMesh tetra = synthetic::tetrahedron();
  const GeodesicField field = geodesic_distances(tetra, 0);
  CHECK(field.dist[0] == 0.0);
  for (int v = 1; v < 4; ++v) CHECK(field.dist[v] == doctest::Approx(1.0));
}

TEST_CASE("dijkstra agrees with Bellman-Ford exactly on small meshes") {
  const TriMesh meshes[] = {synthetic::tetrahedron(), oracles::zigzag_strip(10),
                            synthetic::cylinder_grid(5, 8), synthetic::icosahedron()};
  for (const auto& mesh : meshes) {
    for (int s = 0; s < mesh.vertex_count(); ++s) {
      const Eigen::VectorXd expect = oracles::bellman_ford(mesh, s);
      const GeodesicField field = geodesic_distances(mesh, s);
      for (int v = 0; v < mesh.vertex_count(); ++v) CHECK(field.dist[v] == expect[v]);
    }
  }
}

TEST_CASE("per-edge triangle inequality") {
  const TriMesh mesh = synthetic::class_shape(1, 0, 2);
  const double scale = mesh.bbox_diagonal();
  for (int s : {0, 17, 101}) {
    const GeodesicField field = geodesic_distances(mesh, s);
    for (const auto& e : mesh.edges) {
      const double len = (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
      CHECK(std::abs(field.dist[e[0]] - field.dist[e[1]]) <= len + 1e-9 * scale);
    }
  }
}

TEST_CASE("exact diameter on the unit tetrahedron is 1") {
  CHECK(geodesic_diameter(synthetic::tetrahedron(), DiameterMode::Exact) == doctest::Approx(1.0));
}

TEST_CASE("exact diameter matches the all-pairs oracle on a strip") {
  const TriMesh strip = oracles::zigzag_strip(10);
  double expect = 0.0;
  for (int s = 0; s < strip.vertex_count(); ++s)
    expect = std::max(expect, oracles::bellman_ford(strip, s).maxCoeff());
  CHECK(geodesic_diameter(strip, DiameterMode::Exact) == expect);
}

TEST_CASE("sampled diameter never exceeds the exact one") {
  for (const auto& mesh : {synthetic::icosphere(2), synthetic::class_shape(2, 3, 2)}) {
    const double exact = geodesic_diameter(mesh, DiameterMode::Exact);
    const double sampled = geodesic_diameter(mesh, DiameterMode::Sampled);
    CHECK(sampled <= exact + 1e-12);
    CHECK(sampled > 0.5 * exact);  // loose sanity on the lower bound
  }
}

TEST_CASE("every icosahedron source sees the same farthest distance") {
  const TriMesh ico = synthetic::icosahedron();
  const double d0 = geodesic_distances(ico, 0).dist.maxCoeff();
  for (int s = 1; s < 12; ++s)
    CHECK(geodesic_distances(ico, s).dist.maxCoeff() == doctest::Approx(d0).epsilon(1e-12));
}

TEST_CASE("geodesic cache memoizes per source") {
  const TriMesh mesh = synthetic::icosahedron();
  GeodesicCache cache(mesh);
  const Eigen::VectorXd& a = cache.distances_from(3);
  const Eigen::VectorXd& b = cache.distances_from(3);
  CHECK(&a == &b);
  CHECK(a[3] == 0.0);
}

}  // TEST_SUITE
