#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curvematch/assignment.hpp"
#include "curvematch/cost.hpp"
#include "curvematch/curve.hpp"
#include "curvematch/descriptors.hpp"
#include "curvematch/evaluation.hpp"
#include "curvematch/features.hpp"
#include "curvematch/matcher.hpp"
#include "curvematch/mesh.hpp"
#include "curvematch/segmentation.hpp"
#include "curvematch/spectral.hpp"
#include "curvematch/tessellate.hpp"

namespace curvematch {

enum class SolverKind { BranchAndBound, Exhaustive };

// All experiment knobs in one place.
struct RunConfig {
  int k = 25;                     // eigenfunctions
  int d = 100;                    // descriptor width
  int r = 6;                      // regions
  double tau = 1e3;               // segment gating penalty
  double max_area_factor = 1e-3;  // solid refinement: max_area = area * factor
  SolverKind solver = SolverKind::BranchAndBound;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  std::filesystem::path cache_dir;
  bool use_segments = true;

  void validate() const;
  // Canonical string of the fields that shape cached features.
  std::string feature_key() const;
};

// Everything the matcher and the retrieval baselines need from one shape.
struct PrecomputedFeatures {
  Eigen::VectorXd eigenvalues;    // spectrum of the shape's own operator
  FeatureField field;             // rows = m (curve, restricted) or n (mesh)
  Eigen::MatrixXd region_sig;     // r x 2d
  double intrinsic_diameter = 0;  // raw-shape geodesic diameter / half perimeter
};

struct CurveFeatures {
  Curve2D curve;  // normalized to unit intrinsic diameter (half perimeter = 1)
  PlanarSolidMesh solid;
  SpectralBasis basis;  // of the solid
  SegmentLabels solid_labels;
  PrecomputedFeatures pre;
};

struct MeshFeatures {
  TriMesh mesh;  // normalized to unit geodesic diameter
  SpectralBasis basis;
  SegmentLabels labels;
  PrecomputedFeatures pre;
};

CurveFeatures compute_curve_features(const Curve2D& raw, const RunConfig& config);
MeshFeatures compute_mesh_features(const TriMesh& raw, const RunConfig& config);

// Aligns the query's region labels to the target's (linear assignment on
// region signatures), builds the gated cost matrix and runs the configured
// solver.
MatchResult match_features(const Curve2D& normalized_curve, const PrecomputedFeatures& query,
                           const TriMesh& normalized_mesh, const PrecomputedFeatures& target,
                           const RunConfig& config);
MatchResult match_features(const CurveFeatures& query, const MeshFeatures& target,
                           const RunConfig& config);

CostMatrix build_pair_cost(const PrecomputedFeatures& query, const PrecomputedFeatures& target,
                           const RunConfig& config);

// One branch-and-bound match per target; ascending energy, ties by target id.
RetrievalRanking retrieval_rank(const Curve2D& normalized_curve, const PrecomputedFeatures& query,
                                const std::vector<const TriMesh*>& meshes,
                                const std::vector<const PrecomputedFeatures*>& targets,
                                const std::vector<int>& classes, const RunConfig& config,
                                int query_id = 0);

// --- feature cache -----------------------------------------------------

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t file_content_hash(const std::filesystem::path& path);

void save_precomputed(const PrecomputedFeatures& pre, const std::filesystem::path& path);
PrecomputedFeatures load_precomputed(const std::filesystem::path& path);

}  // namespace curvematch
