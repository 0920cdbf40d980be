#include "curvematch/assignment.hpp"

#include <cmath>
#include <limits>

#include "curvematch/errors.hpp"

namespace curvematch {

// Subset DP over columns: h[S] = min cost of assigning rows r-|S|..r-1 to the
// columns in S. Exponential in r but exact, and trivial at the r <= 16 sizes
// the region assignment produces. Forward reconstruction picks the smallest
// feasible column per row, which yields the lexicographically smallest
// minimizer.
RegionAssignment hungarian(const Eigen::MatrixXd& cost) {
  const int r = static_cast<int>(cost.rows());
  require(r >= 1 && cost.cols() == r, ErrorCode::InvalidArgument,
          "cost matrix must be square and nonempty");
  require(r <= 24, ErrorCode::InvalidArgument, "assignment sizes above 24 are unsupported");
  require(cost.allFinite(), ErrorCode::InvalidArgument, "cost matrix must be finite");

  const int full = (1 << r) - 1;
  std::vector<double> h(static_cast<size_t>(full) + 1,
                        std::numeric_limits<double>::infinity());
  h[0] = 0.0;
  // |S| columns remain for the last |S| rows; row index = r - |S|
  for (int s = 1; s <= full; ++s) {
    const int row = r - __builtin_popcount(static_cast<unsigned>(s));
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < r; ++c) {
      if (!(s >> c & 1)) continue;
      const double v = cost(row, c) + h[s ^ (1 << c)];
      if (v < best) best = v;
    }
    h[s] = best;
  }

  RegionAssignment out;
  out.perm.resize(r);
  int avail = full;
  for (int row = 0; row < r; ++row) {
    for (int c = 0; c < r; ++c) {
      if (!(avail >> c & 1)) continue;
      if (cost(row, c) + h[avail ^ (1 << c)] == h[avail]) {
        out.perm[row] = c;
        avail ^= 1 << c;
        break;
      }
    }
  }

  out.cost = 0.0;
  for (int row = 0; row < r; ++row) out.cost += cost(row, out.perm[row]);
  return out;
}

RegionAssignment assign_regions(const Eigen::MatrixXd& sig2d, const Eigen::MatrixXd& sig3d) {
  require(sig2d.rows() == sig3d.rows() && sig2d.cols() == sig3d.cols(),
          ErrorCode::DimensionMismatch, "signature matrices differ in shape");
  const int r = static_cast<int>(sig2d.rows());
  Eigen::MatrixXd cost(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      cost(a, b) = (sig2d.row(a) - sig3d.row(b)).cwiseAbs().sum();
  return hungarian(cost);
}

std::vector<int> relabel(const std::vector<int>& labels, const RegionAssignment& assignment) {
  std::vector<int> out(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    require(l >= 0 && l < static_cast<int>(assignment.perm.size()), ErrorCode::InvalidArgument,
            "label out of range for assignment");
    out[i] = assignment.perm[l];
  }
  return out;
}

}  // namespace curvematch
