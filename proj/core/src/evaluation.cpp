#include "curvematch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include <json.hpp>

#include "curvematch/assignment.hpp"
#include "curvematch/errors.hpp"
#include "text_io.hpp"

namespace curvematch {

ErrorProfile matching_error(const MatchResult& result, const std::vector<int>& ground_truth,
                            GeodesicCache& geodesics, double diameter, GroupErrorMode mode) {
  const int m = static_cast<int>(result.correspondences.size());
  require(static_cast<int>(ground_truth.size()) == m, ErrorCode::MissingGroundTruth,
          "ground truth must cover every curve vertex");
  require(diameter > 0, ErrorCode::InvalidArgument, "diameter must be positive");
  const int n = geodesics.mesh().vertex_count();

  ErrorProfile profile;
  profile.errors.resize(m);
  for (int i = 0; i < m; ++i) {
    const int gt = ground_truth[i];
    require(gt >= 0 && gt < n, ErrorCode::MissingGroundTruth,
            "ground-truth vertex out of range at curve vertex " + std::to_string(i));
    const Eigen::VectorXd& dist = geodesics.distances_from(gt);
    const auto& group = result.correspondences[i];
    double d;
    if (mode == GroupErrorMode::FirstVertex) {
      d = dist[group.front()];
    } else {
      d = dist[group.front()];
      for (int v : group) d = std::min(d, dist[v]);
    }
    profile.errors[i] = std::min(d / diameter, 1.0);
  }
  return profile;
}

std::vector<double> cumulative_curve(const Eigen::VectorXd& errors,
                                     const std::vector<double>& thresholds) {
  require(errors.size() > 0, ErrorCode::InvalidArgument, "no errors given");
  std::vector<double> fractions(thresholds.size());
  for (size_t t = 0; t < thresholds.size(); ++t) {
    int count = 0;
    for (int i = 0; i < errors.size(); ++i)
      if (errors[i] <= thresholds[t]) ++count;
    fractions[t] = static_cast<double>(count) / static_cast<double>(errors.size());
  }
  return fractions;
}

std::vector<double> uniform_thresholds(int count) {
  require(count >= 2, ErrorCode::InvalidArgument, "need at least 2 thresholds");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = static_cast<double>(i) / (count - 1);
  return out;
}

RetrievalRanking make_ranking(int query_id, std::vector<RetrievalEntry> entries) {
  std::vector<int> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.target_id);
  std::sort(ids.begin(), ids.end());
  require(std::adjacent_find(ids.begin(), ids.end()) == ids.end(), ErrorCode::InvalidArgument,
          "duplicate target id in ranking");
  std::sort(entries.begin(), entries.end(), [](const RetrievalEntry& a, const RetrievalEntry& b) {
    return a.score < b.score || (a.score == b.score && a.target_id < b.target_id);
  });
  return RetrievalRanking{query_id, std::move(entries)};
}

double average_precision(const RetrievalRanking& ranking, int positive_class) {
  int positives_seen = 0;
  long double acc = 0.0L;  // extended accumulation keeps small rationals exact
  for (size_t rank = 0; rank < ranking.entries.size(); ++rank) {
    if (ranking.entries[rank].class_label == positive_class) {
      ++positives_seen;
      acc += static_cast<long double>(positives_seen) / static_cast<long double>(rank + 1);
    }
  }
  require(positives_seen > 0, ErrorCode::NoPositives,
          "ranking contains no targets of the positive class");
  return static_cast<double>(acc / positives_seen);
}

double mean_average_precision(const std::vector<RetrievalRanking>& rankings,
                              const std::vector<int>& query_classes) {
  require(!rankings.empty() && rankings.size() == query_classes.size(),
          ErrorCode::InvalidArgument, "rankings and query classes must align");
  long double acc = 0.0L;
  for (size_t q = 0; q < rankings.size(); ++q)
    acc += average_precision(rankings[q], query_classes[q]);
  return static_cast<double>(acc / static_cast<long double>(rankings.size()));
}

double shapedna_distance(const SpectralBasis& basis_a, const SpectralBasis& basis_b, int k) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be >= 1");
  const int lo_a = basis_a.first_nonzero();
  const int lo_b = basis_b.first_nonzero();
  require(basis_a.k() - lo_a >= k && basis_b.k() - lo_b >= k, ErrorCode::InvalidArgument,
          "bases have fewer than k nonzero eigenvalues");
  return (basis_a.eigenvalues.segment(lo_a, k) - basis_b.eigenvalues.segment(lo_b, k)).norm();
}

double segment_cost_baseline(const Eigen::MatrixXd& sig2d, const Eigen::MatrixXd& sig3d) {
  return assign_regions(sig2d, sig3d).cost;
}

void write_cumulative_csv(std::ostream& out, const std::vector<double>& thresholds,
                          const std::vector<double>& fractions) {
  out << "threshold,fraction\n";
  for (size_t i = 0; i < thresholds.size(); ++i)
    out << detail::format_double(thresholds[i]) << ',' << detail::format_double(fractions[i])
        << '\n';
}

std::string retrieval_summary_json(const std::vector<RetrievalRanking>& rankings,
                                   const std::vector<int>& query_classes,
                                   const std::vector<std::string>& class_names) {
  require(rankings.size() == query_classes.size(), ErrorCode::InvalidArgument,
          "rankings and query classes must align");
  std::map<int, std::pair<long double, int>> per_class;  // class -> (AP sum, count)
  for (size_t q = 0; q < rankings.size(); ++q) {
    const double ap = average_precision(rankings[q], query_classes[q]);
    auto& [sum, count] = per_class[query_classes[q]];
    sum += ap;
    ++count;
  }
  nlohmann::json doc;
  auto& aps = doc["per_class_ap"] = nlohmann::json::object();
  for (const auto& [cls, stats] : per_class) {
    const std::string name = cls >= 0 && cls < static_cast<int>(class_names.size())
                                 ? class_names[cls]
                                 : std::to_string(cls);
    aps[name] = static_cast<double>(stats.first / stats.second);
  }
  doc["map"] = mean_average_precision(rankings, query_classes);
  return doc.dump();
}

void write_ranking_csv(std::ostream& out, const RetrievalRanking& ranking,
                       const std::vector<std::string>& target_names) {
  out << "rank,target,score,class\n";
  for (size_t i = 0; i < ranking.entries.size(); ++i) {
    const auto& e = ranking.entries[i];
    out << (i + 1) << ',';
    if (!target_names.empty())
      out << target_names.at(static_cast<size_t>(e.target_id));
    else
      out << e.target_id;
    out << ',' << detail::format_double(e.score) << ',' << e.class_label << '\n';
  }
}

}  // namespace curvematch
