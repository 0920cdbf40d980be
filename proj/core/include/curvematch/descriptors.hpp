#pragma once

#include <Eigen/Core>
#include <vector>

#include "curvematch/spectral.hpp"
#include "curvematch/tessellate.hpp"

namespace curvematch {

enum class DescriptorKind { Hks, Wks };

// Per-vertex multi-scale spectral descriptor, max-normalized so all entries
// lie in [0, 1] with maximum exactly 1.
struct DescriptorField {
  Eigen::MatrixXd values;  // n x d
  DescriptorKind kind = DescriptorKind::Hks;

  int rows() const { return static_cast<int>(values.rows()); }
  int width() const { return static_cast<int>(values.cols()); }
};

// Scaled heat kernel signature at d log-spaced times in
// [4 ln10 / lambda_{k-1}, 4 ln10 / lambda_1]; each time slice is divided by
// its surface integral, then the whole field is max-normalized.
DescriptorField compute_hks(const SpectralBasis& basis, int d);

// Wave kernel signature at d energies uniform in log-eigenvalue between
// log(lambda_1) and log(lambda_{k-1}), Gaussian bandwidth
// sigma = 7 (e_d - e_1) / d, per-energy weights normalized to sum 1, then
// max-normalized.
DescriptorField compute_wks(const SpectralBasis& basis, int d);

// Rows of a solid field at the curve's boundary vertices.
DescriptorField restrict_to_boundary(const DescriptorField& field, const PlanarSolidMesh& solid);

}  // namespace curvematch
