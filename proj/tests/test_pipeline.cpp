#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "curvematch/errors.hpp"
#include "curvematch/pipeline.hpp"
#include "curvematch/synthetic.hpp"
#include "support/oracles.hpp"

using namespace curvematch;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig config;
  config.k = 12;
  config.d = 24;
  config.r = 4;
  config.max_area_factor = 1.0 / 200.0;
  config.threads = 1;
  return config;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("curve features restrict the solid field to the boundary") {
  const RunConfig config = small_config();
  const Curve2D raw = synthetic::class_query(0, 32);
  const CurveFeatures feat = compute_curve_features(raw, config);

  // normalized so the query solid has unit geodesic diameter, matching the
  // mesh-side normalization
  CHECK(geodesic_diameter(feat.solid, DiameterMode::Exact) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(feat.pre.intrinsic_diameter > 0);

  REQUIRE(feat.pre.field.rows() == 32);
  CHECK(feat.pre.field.width() == config.d);
  REQUIRE(feat.pre.field.labels.size() == 32);
  for (int i = 0; i < 32; ++i) {
    const int solid_vertex = feat.solid.boundary_map[i];
    CHECK(feat.pre.field.labels[i] == feat.solid_labels.labels[solid_vertex]);
    CHECK(feat.pre.field.labels[i] >= 0);
    CHECK(feat.pre.field.labels[i] < config.r);
  }
  CHECK(feat.pre.region_sig.rows() == config.r);
  CHECK(feat.pre.region_sig.cols() == 2 * config.d);
  CHECK(feat.pre.eigenvalues.size() == config.k);
}

TEST_CASE("mesh features are computed on the unit-diameter mesh") {
  const RunConfig config = small_config();
  const TriMesh raw = synthetic::class_shape(1, 0, 2);
  const MeshFeatures feat = compute_mesh_features(raw, config);
  CHECK(feat.pre.intrinsic_diameter > 0);
  CHECK(geodesic_diameter(feat.mesh, DiameterMode::Exact) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(feat.pre.field.rows() == raw.vertex_count());
  CHECK(feat.pre.field.width() == config.d);
}

TEST_CASE("both solvers produce the same energy through the pipeline") {
  RunConfig config = small_config();
  const CurveFeatures query = compute_curve_features(synthetic::class_query(1, 20), config);
  const MeshFeatures target = compute_mesh_features(synthetic::class_shape(1, 1, 1), config);

  config.solver = SolverKind::Exhaustive;
  const MatchResult ex = match_features(query, target, config);
  config.solver = SolverKind::BranchAndBound;
  const MatchResult bb = match_features(query, target, config);
  CHECK(bb.energy() == doctest::Approx(ex.energy()).epsilon(1e-9));
  CHECK(bb.stats.paths_solved <= ex.stats.paths_solved);
}

TEST_CASE("segment gating changes costs but not solver agreement") {
  RunConfig config = small_config();
  config.use_segments = false;
  const CurveFeatures query = compute_curve_features(synthetic::class_query(2, 18), config);
  const MeshFeatures target = compute_mesh_features(synthetic::class_shape(2, 0, 1), config);
  const CostMatrix cost = build_pair_cost(query.pre, target.pre, config);
  CHECK((cost.D.array() < config.tau).all());  // nothing gated

  config.solver = SolverKind::Exhaustive;
  const MatchResult ex = match_features(query, target, config);
  config.solver = SolverKind::BranchAndBound;
  const MatchResult bb = match_features(query, target, config);
  CHECK(bb.energy() == doctest::Approx(ex.energy()).epsilon(1e-9));
}

TEST_CASE("retrieval ranks the query's own class first on an easy fixture") {
  RunConfig config = small_config();
  const auto fixture = synthetic::retrieval_fixture(2, 2, 1, 16);
  const CurveFeatures query = compute_curve_features(fixture.queries[0], config);

  std::vector<MeshFeatures> targets;
  for (const auto& mesh : fixture.targets) targets.push_back(compute_mesh_features(mesh, config));
  std::vector<const TriMesh*> meshes;
  std::vector<const PrecomputedFeatures*> pres;
  for (const auto& t : targets) {
    meshes.push_back(&t.mesh);
    pres.push_back(&t.pre);
  }
  const RetrievalRanking ranking =
      retrieval_rank(query.curve, query.pre, meshes, pres, fixture.target_classes, config);
  REQUIRE(ranking.entries.size() == 4);
  CHECK(ranking.entries[0].class_label == 0);

  // deterministic across repeat runs
  const RetrievalRanking again =
      retrieval_rank(query.curve, query.pre, meshes, pres, fixture.target_classes, config);
  for (size_t i = 0; i < ranking.entries.size(); ++i) {
    CHECK(ranking.entries[i].target_id == again.entries[i].target_id);
    CHECK(ranking.entries[i].score == again.entries[i].score);
  }
}

TEST_CASE("duplicated targets land on adjacent ranks with equal scores") {
  RunConfig config = small_config();
  const CurveFeatures query = compute_curve_features(synthetic::class_query(0, 16), config);
  const MeshFeatures a = compute_mesh_features(synthetic::class_shape(0, 0, 1), config);
  const MeshFeatures b = compute_mesh_features(synthetic::class_shape(2, 1, 1), config);
  // target 0 and target 2 are the same shape
  const std::vector<const TriMesh*> meshes{&a.mesh, &b.mesh, &a.mesh};
  const std::vector<const PrecomputedFeatures*> pres{&a.pre, &b.pre, &a.pre};
  const RetrievalRanking ranking =
      retrieval_rank(query.curve, query.pre, meshes, pres, {}, config);
  int rank_first = -1;
  for (size_t i = 0; i < ranking.entries.size(); ++i)
    if (ranking.entries[i].target_id == 0) rank_first = static_cast<int>(i);
  REQUIRE(rank_first >= 0);
  REQUIRE(rank_first + 1 < static_cast<int>(ranking.entries.size()));
  CHECK(ranking.entries[rank_first + 1].target_id == 2);  // id tie-break
  CHECK(ranking.entries[rank_first].score == ranking.entries[rank_first + 1].score);
}

TEST_CASE("precomputed features round-trip through the cache file") {
  const RunConfig config = small_config();
  const CurveFeatures feat = compute_curve_features(synthetic::class_query(0, 24), config);
  const fs::path path = fs::temp_directory_path() / "curvematch_pipeline_cache.feat";
  save_precomputed(feat.pre, path);
  const PrecomputedFeatures back = load_precomputed(path);
  CHECK(back.intrinsic_diameter == feat.pre.intrinsic_diameter);
  CHECK((back.eigenvalues.array() == feat.pre.eigenvalues.array()).all());
  CHECK((back.field.hks.array() == feat.pre.field.hks.array()).all());
  CHECK((back.field.wks.array() == feat.pre.field.wks.array()).all());
  CHECK(back.field.labels == feat.pre.field.labels);
  CHECK((back.region_sig.array() == feat.pre.region_sig.array()).all());
  fs::remove(path);
}

TEST_CASE("corrupted cache files are rejected") {
  const fs::path path = fs::temp_directory_path() / "curvematch_pipeline_corrupt.feat";
  std::ofstream(path, std::ios::binary) << "garbage";
  CHECK_THROWS_AS(load_precomputed(path), Error);
  fs::remove(path);
}

TEST_CASE("file content hash is stable and content-sensitive") {
  const fs::path a = fs::temp_directory_path() / "curvematch_hash_a";
  const fs::path b = fs::temp_directory_path() / "curvematch_hash_b";
  std::ofstream(a) << "hello";
  std::ofstream(b) << "hellp";
  CHECK(file_content_hash(a) == file_content_hash(a));
  CHECK(file_content_hash(a) != file_content_hash(b));
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("config validation rejects nonsense") {
  RunConfig config;
  config.k = 1;
  CHECK_THROWS_AS(config.validate(), Error);
  config = RunConfig{};
  config.tau = -1;
  CHECK_THROWS_AS(config.validate(), Error);
  config = RunConfig{};
  config.r = 40;
  CHECK_THROWS_AS(config.validate(), Error);
}

}  // TEST_SUITE
