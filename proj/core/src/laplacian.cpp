#include "curvematch/laplacian.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <vector>

#include "curvematch/errors.hpp"

namespace curvematch {

namespace {

LaplacianPair build_cotangent(int n, const std::vector<std::array<int, 3>>& faces,
                              const std::vector<Eigen::Vector3d>& positions) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(faces.size() * 12);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(n);

  for (const auto& f : faces) {
    const Eigen::Vector3d& pa = positions[f[0]];
    const Eigen::Vector3d& pb = positions[f[1]];
    const Eigen::Vector3d& pc = positions[f[2]];
    const double area2 = (pb - pa).cross(pc - pa).norm();  // twice the face area

    // cot(angle at corner k) weights the edge opposite k
    for (int k = 0; k < 3; ++k) {
      const int i = f[(k + 1) % 3];
      const int j = f[(k + 2) % 3];
      const Eigen::Vector3d u = positions[i] - positions[f[k]];
      const Eigen::Vector3d v = positions[j] - positions[f[k]];
      const double cot = u.dot(v) / area2;
      require(std::isfinite(cot), ErrorCode::NumericalDegeneracy,
              "non-finite cotangent weight (degenerate face)");
      const double w = 0.5 * cot;
      triplets.emplace_back(i, j, -w);
      triplets.emplace_back(j, i, -w);
      triplets.emplace_back(i, i, w);
      triplets.emplace_back(j, j, w);
    }

    const double third = area2 / 6.0;  // face area / 3
    mass[f[0]] += third;
    mass[f[1]] += third;
    mass[f[2]] += third;
  }

  LaplacianPair lap;
  lap.stiffness.resize(n, n);
  lap.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  lap.stiffness.makeCompressed();
  lap.mass = std::move(mass);
  for (int i = 0; i < n; ++i)
    require(lap.mass[i] > 0, ErrorCode::NumericalDegeneracy,
            "vertex " + std::to_string(i) + " has non-positive lumped mass");
  return lap;
}

}  // namespace

LaplacianPair build_laplacian_3d(const TriMesh& mesh) {
  return build_cotangent(mesh.vertex_count(), mesh.faces, mesh.vertices);
}

LaplacianPair build_laplacian_2d(const PlanarSolidMesh& solid) {
  std::vector<Eigen::Vector3d> lifted;
  lifted.reserve(solid.vertices.size());
  for (const auto& p : solid.vertices) lifted.emplace_back(p.x(), p.y(), 0.0);
  return build_cotangent(solid.vertex_count(), solid.faces, lifted);
}

}  // namespace curvematch
