#pragma once

#include <Eigen/Core>
#include <vector>

namespace curvematch {

// Per-vertex feature rows used by the matcher: HKS and WKS descriptors plus a
// segment label. Exists for the query curve (restricted from its solid) and
// for the target mesh.
struct FeatureField {
  Eigen::MatrixXd hks;      // rows x d, entries in [0, 1]
  Eigen::MatrixXd wks;      // rows x d
  std::vector<int> labels;  // segment id per row

  int rows() const { return static_cast<int>(hks.rows()); }
  int width() const { return static_cast<int>(hks.cols()); }
};

}  // namespace curvematch
