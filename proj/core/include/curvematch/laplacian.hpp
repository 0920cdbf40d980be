#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "curvematch/mesh.hpp"
#include "curvematch/tessellate.hpp"

namespace curvematch {

// Cotangent stiffness matrix (positive semi-definite, rows sum to zero) and
// lumped barycentric mass. Negative cotangent weights are kept.
struct LaplacianPair {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;

  int size() const { return static_cast<int>(mass.size()); }
};

LaplacianPair build_laplacian_3d(const TriMesh& mesh);

// Flat-metric cotangent operator on the solid triangulation; the plain
// cotangent formula leaves natural (Neumann-like) boundary conditions.
LaplacianPair build_laplacian_2d(const PlanarSolidMesh& solid);

}  // namespace curvematch
