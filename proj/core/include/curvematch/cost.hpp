#pragma once

#include <Eigen/Core>

#include "curvematch/features.hpp"

namespace curvematch {

// Dense m x n feature-distance matrix. Entries for vertices with different
// segment labels equal tau exactly; all other entries are L1 descriptor
// distances bounded by 2d.
struct CostMatrix {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> D;
  double tau = 1e3;

  int rows() const { return static_cast<int>(D.rows()); }
  int cols() const { return static_cast<int>(D.cols()); }
};

double feature_distance(const Eigen::RowVectorXd& hks_m, const Eigen::RowVectorXd& wks_m,
                        int seg_m, const Eigen::RowVectorXd& hks_n,
                        const Eigen::RowVectorXd& wks_n, int seg_n, double tau);

// D[i][j] = feature_distance over all (curve vertex i, mesh vertex j) pairs.
// Requires tau > 2d so the segment gate dominates every descriptor distance.
CostMatrix build_cost_matrix(const FeatureField& feat_m, const FeatureField& feat_n, double tau,
                             int threads = 1);

}  // namespace curvematch
