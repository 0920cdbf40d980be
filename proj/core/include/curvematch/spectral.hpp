#pragma once

#include <Eigen/Core>

#include "curvematch/laplacian.hpp"

namespace curvematch {

// Truncated generalized eigenpairs of (stiffness, mass): ascending
// eigenvalues, mass-orthonormal eigenfunctions, sign-fixed so the first
// non-negligible entry of each column is positive.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;    // k, ascending, >= 0
  Eigen::MatrixXd eigenfunctions; // n x k
  Eigen::VectorXd mass;           // n

  int k() const { return static_cast<int>(eigenvalues.size()); }
  int n() const { return static_cast<int>(mass.size()); }

  // Index of the first eigenvalue that is not numerically zero.
  int first_nonzero() const;
};

// k smallest eigenpairs. Dense solve for small operators, shift-invert
// Lanczos with full reorthogonalization otherwise.
SpectralBasis eigendecompose(const LaplacianPair& lap, int k);

}  // namespace curvematch
