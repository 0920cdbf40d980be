#pragma once

#include <Eigen/Core>
#include <vector>

namespace curvematch {

// Bijective region correspondence and its total cost.
struct RegionAssignment {
  std::vector<int> perm;  // 2D region label -> 3D region label
  double cost = 0.0;
};

// Minimum-cost perfect assignment of an r x r nonnegative matrix (rows to
// columns). Ties resolve to the lexicographically smallest permutation.
RegionAssignment hungarian(const Eigen::MatrixXd& cost);

// Assignment under pairwise L1 distance of region signatures.
RegionAssignment assign_regions(const Eigen::MatrixXd& sig2d, const Eigen::MatrixXd& sig3d);

// Labels mapped through an assignment so matched regions share ids.
std::vector<int> relabel(const std::vector<int>& labels, const RegionAssignment& assignment);

}  // namespace curvematch
