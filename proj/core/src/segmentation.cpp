#include "curvematch/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvematch/errors.hpp"

namespace curvematch {

namespace {

// Seed choices depend only on row geometry (norms, then absolute values, then
// index), which keeps segmentation equivariant under vertex reindexing and
// insensitive to eigenvector sign conventions.
bool row_priority_less(const Eigen::MatrixXd& x, int a, int b) {
  const double na = x.row(a).squaredNorm();
  const double nb = x.row(b).squaredNorm();
  if (na != nb) return na > nb;  // larger norm wins
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double va = std::abs(x(a, c));
    const double vb = std::abs(x(b, c));
    if (va != vb) return va > vb;
  }
  return a < b;
}

int seed_row(const Eigen::MatrixXd& x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(x.rows()); ++i)
    if (row_priority_less(x, i, best)) best = i;
  return best;
}

}  // namespace

SegmentLabels segment_shape(const SpectralBasis& basis,
                            const std::vector<std::vector<int>>& adjacency, int r) {
  const int n = basis.n();
  require(r >= 2 && r <= 16, ErrorCode::InvalidArgument, "region count must be in [2, 16]");
  require(basis.k() >= r + 1, ErrorCode::InvalidArgument,
          "basis needs at least r+1 eigenpairs (uses psi_1..psi_r)");
  require(static_cast<int>(adjacency.size()) == n, ErrorCode::DimensionMismatch,
          "adjacency size does not match basis");
  require(n >= r, ErrorCode::DegenerateSegmentation, "fewer vertices than regions");

  Eigen::MatrixXd feat(n, r);
  for (int j = 1; j <= r; ++j) {
    const double ev = basis.eigenvalues[j];
    require(ev > 0, ErrorCode::DegenerateSegmentation,
            "eigenvalue " + std::to_string(j) + " is numerically zero");
    feat.col(j - 1) = basis.eigenfunctions.col(j) / std::sqrt(ev);
  }

  // farthest-point seeding from the most prominent feature row
  std::vector<int> seeds{seed_row(feat)};
  Eigen::VectorXd min_d2 = (feat.rowwise() - feat.row(seeds[0])).rowwise().squaredNorm();
  while (static_cast<int>(seeds.size()) < r) {
    int far = 0;
    for (int i = 1; i < n; ++i) {
      if (min_d2[i] > min_d2[far] ||
          (min_d2[i] == min_d2[far] && row_priority_less(feat, i, far)))
        far = i;
    }
    seeds.push_back(far);
    min_d2 = min_d2.cwiseMin((feat.rowwise() - feat.row(far)).rowwise().squaredNorm());
  }

  Eigen::MatrixXd centers(r, r);
  for (int l = 0; l < r; ++l) centers.row(l) = feat.row(seeds[l]);

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = (feat.row(i) - centers.row(0)).squaredNorm();
      for (int l = 1; l < r; ++l) {
        const double d2 = (feat.row(i) - centers.row(l)).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = l;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(r, r);
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(r);
    for (int i = 0; i < n; ++i) {
      sums.row(labels[i]) += feat.row(i);
      ++counts[labels[i]];
    }
    for (int l = 0; l < r; ++l) {
      if (counts[l] > 0) {
        centers.row(l) = sums.row(l) / counts[l];
      } else {
        // reseed an emptied cluster at the row farthest from all centers
        int far = 0;
        double far_d2 = -1.0;
        for (int i = 0; i < n; ++i) {
          double d2 = std::numeric_limits<double>::infinity();
          for (int l2 = 0; l2 < r; ++l2)
            d2 = std::min(d2, (feat.row(i) - centers.row(l2)).squaredNorm());
          if (d2 > far_d2 || (d2 == far_d2 && row_priority_less(feat, i, far))) {
            far_d2 = d2;
            far = i;
          }
        }
        centers.row(l) = feat.row(far);
      }
    }
  }

  // keep each label's largest connected component, free the rest
  std::vector<int> component(n, -1);
  std::vector<long> comp_size;
  std::vector<int> comp_label;
  for (int i = 0; i < n; ++i) {
    if (component[i] >= 0) continue;
    const int c = static_cast<int>(comp_size.size());
    comp_size.push_back(0);
    comp_label.push_back(labels[i]);
    std::vector<int> stack{i};
    component[i] = c;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++comp_size[c];
      for (int w : adjacency[v]) {
        if (component[w] < 0 && labels[w] == labels[i]) {
          component[w] = c;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<int> main_comp(r, -1);
  for (int c = 0; c < static_cast<int>(comp_size.size()); ++c) {
    const int l = comp_label[c];
    if (main_comp[l] < 0 || comp_size[c] > comp_size[main_comp[l]]) main_comp[l] = c;
  }
  for (int l = 0; l < r; ++l)
    require(main_comp[l] >= 0, ErrorCode::DegenerateSegmentation,
            "region " + std::to_string(l) + " is empty");

  std::vector<char> free_vertex(n, 0);
  int free_count = 0;
  for (int i = 0; i < n; ++i) {
    if (component[i] != main_comp[labels[i]]) {
      free_vertex[i] = 1;
      ++free_count;
    }
  }

  // simultaneous sweeps: each freed vertex takes the dominant label among its
  // settled neighbors (ties to the smallest label)
  while (free_count > 0) {
    std::vector<std::pair<int, int>> updates;
    for (int i = 0; i < n; ++i) {
      if (!free_vertex[i]) continue;
      int votes[16] = {0};
      bool any = false;
      for (int w : adjacency[i]) {
        if (!free_vertex[w]) {
          ++votes[labels[w]];
          any = true;
        }
      }
      if (!any) continue;
      int best = 0;
      for (int l = 1; l < r; ++l)
        if (votes[l] > votes[best]) best = l;
      updates.emplace_back(i, best);
    }
    require(!updates.empty(), ErrorCode::DegenerateSegmentation,
            "connectivity repair cannot reach detached component");
    for (const auto& [i, l] : updates) {
      labels[i] = l;
      free_vertex[i] = 0;
      --free_count;
    }
  }

  SegmentLabels out{std::move(labels), r};
  return out;
}

Eigen::MatrixXd region_signatures(const SegmentLabels& labels, const Eigen::MatrixXd& hks,
                                  const Eigen::MatrixXd& wks, const Eigen::VectorXd& mass) {
  const int n = labels.size();
  require(hks.rows() == n && wks.rows() == n && mass.size() == n, ErrorCode::DimensionMismatch,
          "labels/descriptors/mass sizes differ");
  const int dh = static_cast<int>(hks.cols());
  const int dw = static_cast<int>(wks.cols());
  Eigen::MatrixXd sig = Eigen::MatrixXd::Zero(labels.r, dh + dw);
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(labels.r);
  for (int i = 0; i < n; ++i) {
    const int l = labels.labels[i];
    sig.row(l).head(dh) += mass[i] * hks.row(i);
    sig.row(l).tail(dw) += mass[i] * wks.row(i);
    weight[l] += mass[i];
  }
  for (int l = 0; l < labels.r; ++l) {
    require(weight[l] > 0, ErrorCode::DegenerateSegmentation,
            "region " + std::to_string(l) + " has zero mass");
    sig.row(l) /= weight[l];
  }
  return sig;
}

}  // namespace curvematch
