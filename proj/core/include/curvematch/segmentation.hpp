#pragma once

#include <Eigen/Core>
#include <vector>

#include "curvematch/spectral.hpp"

namespace curvematch {

// Deformation-invariant region labels: every label in [0, r), every region
// nonempty and connected in the shape's edge graph.
struct SegmentLabels {
  std::vector<int> labels;
  int r = 0;

  int size() const { return static_cast<int>(labels.size()); }
};

// Spectral k-means on rows of [psi_1/sqrt(l_1), ..., psi_r/sqrt(l_r)] with
// deterministic farthest-point seeding, followed by reassignment of detached
// label components until every region is connected.
SegmentLabels segment_shape(const SpectralBasis& basis,
                            const std::vector<std::vector<int>>& adjacency, int r);

// Row l = mass-weighted mean of the concatenated [HKS | WKS] rows over
// region l; an r x 2d matrix.
Eigen::MatrixXd region_signatures(const SegmentLabels& labels, const Eigen::MatrixXd& hks,
                                  const Eigen::MatrixXd& wks, const Eigen::VectorXd& mass);

}  // namespace curvematch
