#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "curvematch/geodesics.hpp"
#include "curvematch/matcher.hpp"
#include "curvematch/spectral.hpp"

namespace curvematch {

// Per-curve-vertex geodesic matching errors, normalized to [0, 1] by the
// target's geodesic diameter.
struct ErrorProfile {
  Eigen::VectorXd errors;

  double mean() const { return errors.mean(); }
  double max() const { return errors.maxCoeff(); }
};

enum class GroupErrorMode {
  FirstVertex,   // evaluate the first matched vertex of each group (default)
  MinOverGroup,  // best vertex of the group
};

ErrorProfile matching_error(const MatchResult& result, const std::vector<int>& ground_truth,
                            GeodesicCache& geodesics, double diameter,
                            GroupErrorMode mode = GroupErrorMode::FirstVertex);

// Fraction of errors <= t for each threshold t.
std::vector<double> cumulative_curve(const Eigen::VectorXd& errors,
                                     const std::vector<double>& thresholds);

std::vector<double> uniform_thresholds(int count);  // grid on [0, 1]

struct RetrievalEntry {
  int target_id = 0;
  double score = 0.0;  // lower is better
  int class_label = -1;
};

// Targets sorted by ascending score, ties by target id.
struct RetrievalRanking {
  int query_id = 0;
  std::vector<RetrievalEntry> entries;
};

RetrievalRanking make_ranking(int query_id, std::vector<RetrievalEntry> entries);

// AP = mean over positives of (positives at or above rank) / rank.
double average_precision(const RetrievalRanking& ranking, int positive_class);
double mean_average_precision(const std::vector<RetrievalRanking>& rankings,
                              const std::vector<int>& query_classes);

// Euclidean distance between the first k nonzero eigenvalues of two spectra
// (the 3D target's and the query solid's).
double shapedna_distance(const SpectralBasis& basis_a, const SpectralBasis& basis_b, int k);

// Region-assignment cost used directly as a retrieval score.
double segment_cost_baseline(const Eigen::MatrixXd& sig2d, const Eigen::MatrixXd& sig3d);

void write_cumulative_csv(std::ostream& out, const std::vector<double>& thresholds,
                          const std::vector<double>& fractions);
void write_ranking_csv(std::ostream& out, const RetrievalRanking& ranking,
                       const std::vector<std::string>& target_names = {});

// {"per_class_ap": {name: mean AP over that class's queries}, "map": ...}
std::string retrieval_summary_json(const std::vector<RetrievalRanking>& rankings,
                                   const std::vector<int>& query_classes,
                                   const std::vector<std::string>& class_names);

}  // namespace curvematch
