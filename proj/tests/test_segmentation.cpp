#include <doctest.h>

#include <set>

#include "curvematch/descriptors.hpp"
#include "curvematch/errors.hpp"
#include "curvematch/laplacian.hpp"
#include "curvematch/segmentation.hpp"
#include "curvematch/synthetic.hpp"

using namespace curvematch;

namespace {

SpectralBasis basis_of(const TriMesh& mesh, int k) {
  return eigendecompose(build_laplacian_3d(mesh), k);
}

void check_regions(const SegmentLabels& seg, const std::vector<std::vector<int>>& adjacency) {
  const int n = seg.size();
  std::vector<int> count(seg.r, 0);
  for (int i = 0; i < n; ++i) {
    REQUIRE(seg.labels[i] >= 0);
    REQUIRE(seg.labels[i] < seg.r);
    ++count[seg.labels[i]];
  }
  for (int l = 0; l < seg.r; ++l) CHECK(count[l] > 0);

  // each region connected
  for (int l = 0; l < seg.r; ++l) {
    int start = -1;
    for (int i = 0; i < n && start < 0; ++i)
      if (seg.labels[i] == l) start = i;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adjacency[v]) {
        if (!seen[w] && seg.labels[w] == l) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    CHECK(reached == count[l]);
  }
}

}  // namespace

TEST_SUITE("segmentation") {

TEST_CASE("two regions on a symmetric dumbbell follow the sign of psi_1") {
  // deep-waisted dumbbell with an even ring count, so no vertex sits exactly
  // on the psi_1 zero set
  const TriMesh sphere = synthetic::uv_sphere(12, 16);
  std::vector<Eigen::Vector3d> verts = sphere.vertices;
  for (auto& p : verts) {
    const Eigen::Vector3d u = p.normalized();
    p = (0.12 + 0.88 * std::pow(u.z(), 4)) * u;
  }
  const TriMesh dumbbell = make_mesh(std::move(verts), sphere.faces);
  const SpectralBasis basis = basis_of(dumbbell, 6);
  const SegmentLabels seg = segment_shape(basis, dumbbell.adjacency, 2);
  check_regions(seg, dumbbell.adjacency);

  // oracle: the sign structure of the first nonzero eigenfunction
  int agree = 0, total = dumbbell.vertex_count();
  for (int i = 0; i < total; ++i) {
    const int side = basis.eigenfunctions(i, 1) >= 0 ? 1 : 0;
    if (side == seg.labels[i]) ++agree;
  }
  const double frac = static_cast<double>(std::max(agree, total - agree)) / total;
  CHECK(frac >= 0.98);  // identical up to the label swap and boundary rounding
}

TEST_CASE("regions are nonempty and connected across shapes and r") {
  for (int class_id : {0, 2}) {
    const TriMesh mesh = synthetic::class_shape(class_id, 1, 2);
    const SpectralBasis basis = basis_of(mesh, 9);
    for (int r : {2, 4, 6}) {
      const SegmentLabels seg = segment_shape(basis, mesh.adjacency, r);
      check_regions(seg, mesh.adjacency);
    }
  }
}

TEST_CASE("same input gives identical labels") {
  const TriMesh mesh = synthetic::class_shape(2, 2, 2);
  const SpectralBasis basis = basis_of(mesh, 8);
  const SegmentLabels a = segment_shape(basis, mesh.adjacency, 5);
  const SegmentLabels b = segment_shape(basis, mesh.adjacency, 5);
  CHECK(a.labels == b.labels);
}

TEST_CASE("vertex reindexing permutes the labels") {
  const TriMesh mesh = synthetic::class_shape(2, 0, 1);  // generic, no exact symmetry
  const int n = mesh.vertex_count();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i * 5 + 3) % n;  // 5 coprime to 42
  std::vector<Eigen::Vector3d> verts(n);
  for (int i = 0; i < n; ++i) verts[perm[i]] = mesh.vertices[i];
  std::vector<std::array<int, 3>> faces = mesh.faces;
  for (auto& f : faces)
    for (int& v : f) v = perm[v];
  const TriMesh remeshed = make_mesh(std::move(verts), std::move(faces));

  const SegmentLabels a = segment_shape(basis_of(mesh, 6), mesh.adjacency, 4);
  const SegmentLabels b = segment_shape(basis_of(remeshed, 6), remeshed.adjacency, 4);
  for (int i = 0; i < n; ++i) CHECK(a.labels[i] == b.labels[perm[i]]);
}

TEST_CASE("region signatures: degenerate and uniform cases") {
  // 4-vertex toy with 2 regions, hand-checked means
  SegmentLabels seg;
  seg.r = 2;
  seg.labels = {0, 0, 1, 1};
  Eigen::MatrixXd hks(4, 2), wks(4, 2);
  hks << 1, 0, 0, 1, 1, 1, 0, 0;
  wks << 0.5, 0.5, 0.5, 0.5, 1, 0, 0, 1;
  Eigen::VectorXd mass(4);
  mass << 1, 3, 2, 2;

  const Eigen::MatrixXd sig = region_signatures(seg, hks, wks, mass);
  REQUIRE(sig.rows() == 2);
  REQUIRE(sig.cols() == 4);
  // region 0: weights 1,3 -> hks (0.25, 0.75), wks (0.5, 0.5)
  CHECK(sig(0, 0) == doctest::Approx(0.25));
  CHECK(sig(0, 1) == doctest::Approx(0.75));
  CHECK(sig(0, 2) == doctest::Approx(0.5));
  CHECK(sig(0, 3) == doctest::Approx(0.5));
  // region 1: uniform mass -> plain averages
  CHECK(sig(1, 0) == doctest::Approx(0.5));
  CHECK(sig(1, 1) == doctest::Approx(0.5));
  CHECK(sig(1, 2) == doctest::Approx(0.5));
  CHECK(sig(1, 3) == doctest::Approx(0.5));

  // single-region input equals the global mass-weighted mean
  SegmentLabels one;
  one.r = 1;
  one.labels = {0, 0, 0, 0};
  const Eigen::MatrixXd global = region_signatures(one, hks, wks, mass);
  CHECK(global(0, 0) == doctest::Approx((1.0 * 1 + 0 * 3 + 1 * 2 + 0 * 2) / 8.0));
}

TEST_CASE("preconditions are enforced") {
  const TriMesh mesh = synthetic::icosahedron();
  const SpectralBasis basis = basis_of(mesh, 5);
  CHECK_THROWS_AS(segment_shape(basis, mesh.adjacency, 1), Error);
  CHECK_THROWS_AS(segment_shape(basis, mesh.adjacency, 17), Error);
  CHECK_THROWS_AS(segment_shape(basis, mesh.adjacency, 5), Error);  // needs k >= r+1
}

}  // TEST_SUITE
