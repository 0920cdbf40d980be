#include "curvematch/cost.hpp"

#include "curvematch/errors.hpp"
#include "curvematch/parallel.hpp"

namespace curvematch {

double feature_distance(const Eigen::RowVectorXd& hks_m, const Eigen::RowVectorXd& wks_m,
                        int seg_m, const Eigen::RowVectorXd& hks_n,
                        const Eigen::RowVectorXd& wks_n, int seg_n, double tau) {
  require(hks_m.size() == hks_n.size() && wks_m.size() == wks_n.size(),
          ErrorCode::DimensionMismatch, "descriptor widths differ");
  if (seg_m != seg_n) return tau;
  return (hks_m - hks_n).cwiseAbs().sum() + (wks_m - wks_n).cwiseAbs().sum();
}

CostMatrix build_cost_matrix(const FeatureField& feat_m, const FeatureField& feat_n, double tau,
                             int threads) {
  require(feat_m.width() == feat_n.width() && feat_m.wks.cols() == feat_n.wks.cols(),
          ErrorCode::DimensionMismatch, "feature widths differ");
  require(feat_m.rows() == static_cast<int>(feat_m.labels.size()) &&
              feat_n.rows() == static_cast<int>(feat_n.labels.size()),
          ErrorCode::DimensionMismatch, "label counts do not match descriptor rows");
  const double max_descriptor_distance =
      static_cast<double>(feat_m.hks.cols() + feat_m.wks.cols());
  require(tau > max_descriptor_distance, ErrorCode::InvalidArgument,
          "tau must exceed the maximum descriptor distance 2d = " +
              std::to_string(max_descriptor_distance));

  const int m = feat_m.rows();
  const int n = feat_n.rows();
  CostMatrix cost;
  cost.tau = tau;
  cost.D.resize(m, n);
  parallel_for(0, m, threads, [&](int i) {
    const int seg_i = feat_m.labels[i];
    for (int j = 0; j < n; ++j) {
      if (seg_i != feat_n.labels[j]) {
        cost.D(i, j) = tau;
      } else {
        cost.D(i, j) = (feat_m.hks.row(i) - feat_n.hks.row(j)).cwiseAbs().sum() +
                       (feat_m.wks.row(i) - feat_n.wks.row(j)).cwiseAbs().sum();
      }
    }
  });
  return cost;
}

}  // namespace curvematch
