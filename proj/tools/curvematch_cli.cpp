// Command-line front end: feature precomputation with caching, 2D-to-3D
// matching, retrieval over a mesh directory, matching-error evaluation and a
// solver benchmark sweep.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvematch/container.hpp"
#include "curvematch/curve.hpp"
#include "curvematch/errors.hpp"
#include "curvematch/evaluation.hpp"
#include "curvematch/matcher.hpp"
#include "curvematch/mesh.hpp"
#include "curvematch/pipeline.hpp"
#include "curvematch/synthetic.hpp"

namespace fs = std::filesystem;
using namespace curvematch;

namespace {

enum class InputKind { Curve, Mesh };

InputKind input_kind(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv" || ext == ".json") return InputKind::Curve;
  if (ext == ".off" || ext == ".obj") return InputKind::Mesh;
  fail(ErrorCode::InvalidArgument, "unrecognized input extension '" + ext + "'");
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

struct CliOptions {
  RunConfig config;
  bool no_segments = false;

  void finalize() {
    config.use_segments = !no_segments;
    if (config.cache_dir.empty()) {
      if (const char* env = std::getenv("CURVEMATCH_CACHE")) config.cache_dir = env;
    }
  }
};

void add_config_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("-k,--eigenfunctions", opt.config.k, "number of eigenfunctions");
  cmd->add_option("-d,--descriptor-width", opt.config.d, "descriptor width per signature");
  cmd->add_option("-r,--regions", opt.config.r, "segmentation region count");
  cmd->add_option("--tau", opt.config.tau, "segment gating penalty");
  cmd->add_option("--max-area-factor", opt.config.max_area_factor,
                  "solid refinement area bound as a fraction of the polygon area");
  cmd->add_option("--seed", opt.config.seed, "seed for synthetic data");
  cmd->add_option("-j,--threads", opt.config.threads, "worker threads (0 = hardware)");
  cmd->add_option("--cache-dir", opt.config.cache_dir,
                  "feature cache directory (env CURVEMATCH_CACHE)");
  cmd->add_flag("--no-segments", opt.no_segments, "disable segment gating in the cost matrix");
  std::map<std::string, SolverKind> solver_names{{"bnb", SolverKind::BranchAndBound},
                                                 {"exhaustive", SolverKind::Exhaustive}};
  cmd->add_option("--solver", opt.config.solver, "matching solver")
      ->transform(CLI::CheckedTransformer(solver_names, CLI::ignore_case));
}

fs::path cache_path_for(const fs::path& input, const RunConfig& config, InputKind kind) {
  const std::string key = config.feature_key();
  std::uint64_t hash = file_content_hash(input);
  hash ^= fnv1a64(key.data(), key.size()) + 0x9e3779b97f4a7c15ull + (hash << 6) + (hash >> 2);
  const char* suffix = kind == InputKind::Curve ? ".curve.feat" : ".mesh.feat";
  return config.cache_dir / (hex64(hash) + suffix);
}

// Loads features through the cache when a cache dir is set. Returns the
// normalized shape alongside; reports whether the cache was hit.
std::pair<Curve2D, PrecomputedFeatures> curve_features_cached(const fs::path& path,
                                                              const RunConfig& config,
                                                              bool* cache_hit = nullptr,
                                                              bool force = false) {
  const Curve2D raw = load_curve(path);
  if (cache_hit) *cache_hit = false;
  if (!config.cache_dir.empty()) {
    fs::create_directories(config.cache_dir);
    const fs::path cache_file = cache_path_for(path, config, InputKind::Curve);
    if (!force && fs::exists(cache_file)) {
      try {
        PrecomputedFeatures pre = load_precomputed(cache_file);
        if (cache_hit) *cache_hit = true;
        return {scaled(raw, 1.0 / pre.intrinsic_diameter), std::move(pre)};
      } catch (const Error& e) {
        std::cerr << "warning: corrupted cache entry " << cache_file << " (" << e.what()
                  << "), recomputing\n";
      }
    }
    CurveFeatures feat = compute_curve_features(raw, config);
    save_precomputed(feat.pre, cache_file);
    return {std::move(feat.curve), std::move(feat.pre)};
  }
  CurveFeatures feat = compute_curve_features(raw, config);
  return {std::move(feat.curve), std::move(feat.pre)};
}

std::pair<TriMesh, PrecomputedFeatures> mesh_features_cached(const fs::path& path,
                                                             const RunConfig& config,
                                                             bool* cache_hit = nullptr,
                                                             bool force = false) {
  const TriMesh raw = load_mesh(path);
  if (cache_hit) *cache_hit = false;
  if (!config.cache_dir.empty()) {
    fs::create_directories(config.cache_dir);
    const fs::path cache_file = cache_path_for(path, config, InputKind::Mesh);
    if (!force && fs::exists(cache_file)) {
      try {
        PrecomputedFeatures pre = load_precomputed(cache_file);
        if (cache_hit) *cache_hit = true;
        return {scaled(raw, 1.0 / pre.intrinsic_diameter), std::move(pre)};
      } catch (const Error& e) {
        std::cerr << "warning: corrupted cache entry " << cache_file << " (" << e.what()
                  << "), recomputing\n";
      }
    }
    MeshFeatures feat = compute_mesh_features(raw, config);
    save_precomputed(feat.pre, cache_file);
    return {std::move(feat.mesh), std::move(feat.pre)};
  }
  MeshFeatures feat = compute_mesh_features(raw, config);
  return {std::move(feat.mesh), std::move(feat.pre)};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  require(out.good(), ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

int cmd_features(const fs::path& input, CliOptions& opt, bool force,
                 const std::string& labels_out) {
  opt.finalize();
  if (opt.config.cache_dir.empty()) opt.config.cache_dir = "curvematch_cache";
  opt.config.validate();
  const InputKind kind = input_kind(input);
  bool hit = false;
  nlohmann::json doc;
  std::vector<int> labels;
  if (kind == InputKind::Curve) {
    auto [curve, pre] = curve_features_cached(input, opt.config, &hit, force);
    doc["kind"] = "curve";
    doc["rows"] = curve.size();
    labels = pre.field.labels;
  } else {
    auto [mesh, pre] = mesh_features_cached(input, opt.config, &hit, force);
    doc["kind"] = "mesh";
    doc["rows"] = mesh.vertex_count();
    labels = pre.field.labels;
  }
  if (!labels_out.empty()) write_text(labels_out, nlohmann::json(labels).dump() + "\n");
  doc["input"] = input.string();
  doc["cache_file"] = cache_path_for(input, opt.config, kind).string();
  doc["cache_hit"] = hit;
  doc["k"] = opt.config.k;
  doc["d"] = opt.config.d;
  doc["r"] = opt.config.r;
  std::cout << doc.dump() << "\n";
  return 0;
}

int cmd_match(const fs::path& curve_path, const fs::path& mesh_path, CliOptions& opt,
              bool stats, const std::string& out_file, const std::string& dump_cost) {
  opt.finalize();
  opt.config.validate();
  auto [curve, query] = curve_features_cached(curve_path, opt.config);
  auto [mesh, target] = mesh_features_cached(mesh_path, opt.config);
  if (!dump_cost.empty()) {
    const CostMatrix cost = build_pair_cost(query, target, opt.config);
    std::ofstream out(dump_cost, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot write '" + dump_cost + "'");
    write_matrix(out, cost.D);
  }
  const MatchResult result = match_features(curve, query, mesh, target, opt.config);
  const std::string json = match_result_json(result, stats);
  if (out_file.empty())
    std::cout << json << "\n";
  else
    write_text(out_file, json + "\n");
  return 0;
}

std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<const char*> exts) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* want : exts)
      if (ext == want) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

struct ClassManifest {
  std::map<std::string, std::string> target_class;  // mesh file -> class name
  std::map<std::string, std::string> query_class;   // curve file -> class name
  std::map<std::string, int> ids;                   // class name -> id
  std::vector<std::string> names;                   // id -> class name

  int id_of(const std::string& file, bool is_query) const {
    const auto& table = is_query ? query_class : target_class;
    const auto it = table.find(file);
    if (it == table.end()) return -1;
    return ids.at(it->second);
  }
};

ClassManifest load_manifest(const std::string& path) {
  ClassManifest manifest;
  if (path.empty()) return manifest;
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open labels manifest");
  try {
    nlohmann::json doc;
    in >> doc;
    for (const auto& [file, name] : doc.at("classes").items()) {
      manifest.target_class[file] = name.get<std::string>();
      manifest.ids.emplace(name.get<std::string>(), 0);
    }
    if (doc.contains("queries")) {
      for (const auto& [file, name] : doc.at("queries").items()) {
        manifest.query_class[file] = name.get<std::string>();
        manifest.ids.emplace(name.get<std::string>(), 0);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("labels manifest: ") + e.what());
  }
  int next = 0;
  for (auto& [name, id] : manifest.ids) {
    id = next++;
    manifest.names.push_back(name);
  }
  return manifest;
}

// One query (curve file) or a directory of queries against a mesh directory.
int cmd_retrieve(const fs::path& query_path, const fs::path& mesh_dir, CliOptions& opt,
                 const std::string& labels_file, const std::string& query_class,
                 const std::string& out_prefix, bool csv_only) {
  opt.finalize();
  opt.config.validate();

  const auto mesh_files = list_files(mesh_dir, {".off", ".obj"});
  require(!mesh_files.empty(), ErrorCode::InvalidArgument,
          "no .off/.obj meshes in '" + mesh_dir.string() + "'");
  const ClassManifest manifest = load_manifest(labels_file);

  std::vector<TriMesh> meshes;
  std::vector<PrecomputedFeatures> features;
  std::vector<int> classes;
  std::vector<std::string> names;
  meshes.reserve(mesh_files.size());
  for (const auto& file : mesh_files) {
    auto [mesh, pre] = mesh_features_cached(file, opt.config);
    meshes.push_back(std::move(mesh));
    features.push_back(std::move(pre));
    names.push_back(file.filename().string());
    if (!manifest.target_class.empty())
      classes.push_back(manifest.id_of(file.filename().string(), false));
  }
  std::vector<const TriMesh*> mesh_ptrs;
  std::vector<const PrecomputedFeatures*> feat_ptrs;
  for (size_t i = 0; i < meshes.size(); ++i) {
    mesh_ptrs.push_back(&meshes[i]);
    feat_ptrs.push_back(&features[i]);
  }

  auto rank_one = [&](const fs::path& curve_file, int query_id) {
    auto [curve, query] = curve_features_cached(curve_file, opt.config);
    return retrieval_rank(curve, query, mesh_ptrs, feat_ptrs, classes, opt.config, query_id);
  };

  auto ranking_json = [&](const RetrievalRanking& ranking) {
    nlohmann::json list = nlohmann::json::array();
    for (size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      nlohmann::json row{{"rank", i + 1},
                         {"target", names.at(static_cast<size_t>(e.target_id))},
                         {"score", e.score}};
      if (e.class_label >= 0) row["class"] = manifest.names.at(e.class_label);
      list.push_back(std::move(row));
    }
    return list;
  };

  if (!fs::is_directory(query_path)) {
    const RetrievalRanking ranking = rank_one(query_path, 0);
    std::ostringstream csv;
    write_ranking_csv(csv, ranking, names);
    nlohmann::json doc;
    doc["ranking"] = ranking_json(ranking);
    if (!query_class.empty()) {
      const auto it = manifest.ids.find(query_class);
      require(it != manifest.ids.end(), ErrorCode::InvalidArgument,
              "query class '" + query_class + "' not present in the manifest");
      doc["query_class"] = query_class;
      doc["ap"] = average_precision(ranking, it->second);
    }
    if (!out_prefix.empty()) {
      write_text(out_prefix + ".csv", csv.str());
      write_text(out_prefix + ".json", doc.dump() + "\n");
    }
    std::cout << (csv_only ? csv.str() : doc.dump() + "\n");
    return 0;
  }

  // directory of queries: emit per-class AP and MAP
  const auto query_files = list_files(query_path, {".csv", ".json"});
  require(!query_files.empty(), ErrorCode::InvalidArgument,
          "no .csv/.json curves in '" + query_path.string() + "'");
  require(!manifest.query_class.empty(), ErrorCode::InvalidArgument,
          "multi-query retrieval needs a manifest with a \"queries\" table");
  std::vector<RetrievalRanking> rankings;
  std::vector<int> query_classes;
  for (size_t q = 0; q < query_files.size(); ++q) {
    const int cls = manifest.id_of(query_files[q].filename().string(), true);
    require(cls >= 0, ErrorCode::InvalidArgument,
            "query '" + query_files[q].filename().string() + "' missing from the manifest");
    rankings.push_back(rank_one(query_files[q], static_cast<int>(q)));
    query_classes.push_back(cls);
    if (!out_prefix.empty()) {
      std::ostringstream csv;
      write_ranking_csv(csv, rankings.back(), names);
      write_text(out_prefix + "." + query_files[q].stem().string() + ".csv", csv.str());
    }
  }
  const std::string summary =
      retrieval_summary_json(rankings, query_classes, manifest.names) + "\n";
  if (!out_prefix.empty()) write_text(out_prefix + ".summary.json", summary);
  std::cout << summary;
  return 0;
}

int cmd_eval(const fs::path& curve_path, const fs::path& mesh_path, const fs::path& gt_path,
             CliOptions& opt, int threshold_count, bool as_json, const std::string& out_file) {
  opt.finalize();
  opt.config.validate();
  auto [curve, query] = curve_features_cached(curve_path, opt.config);
  auto [mesh, target] = mesh_features_cached(mesh_path, opt.config);

  std::ifstream gt_in(gt_path);
  require(gt_in.good(), ErrorCode::IoError, "cannot open ground truth file");
  std::vector<int> ground_truth;
  try {
    nlohmann::json doc;
    gt_in >> doc;
    ground_truth = doc.get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("ground truth: ") + e.what());
  }

  const MatchResult result = match_features(curve, query, mesh, target, opt.config);
  GeodesicCache geodesics(mesh);
  // the mesh is normalized to unit geodesic diameter upstream
  const ErrorProfile profile = matching_error(result, ground_truth, geodesics, 1.0);
  const auto thresholds = uniform_thresholds(threshold_count);
  const auto fractions = cumulative_curve(profile.errors, thresholds);

  std::string text;
  if (as_json) {
    nlohmann::json doc;
    doc["energy"] = result.energy();
    doc["errors"] = std::vector<double>(profile.errors.data(),
                                        profile.errors.data() + profile.errors.size());
    doc["mean_error"] = profile.mean();
    doc["max_error"] = profile.max();
    doc["thresholds"] = thresholds;
    doc["fractions"] = fractions;
    text = doc.dump() + "\n";
  } else {
    std::ostringstream csv;
    write_cumulative_csv(csv, thresholds, fractions);
    text = csv.str();
  }
  if (out_file.empty())
    std::cout << text;
  else
    write_text(out_file, text);
  return 0;
}

int cmd_bench(CliOptions& opt, const std::string& m_grid, int n, const std::string& solvers,
              const std::string& out_file) {
  opt.finalize();
  opt.config.validate();
  std::vector<int> ms;
  {
    std::stringstream ss(m_grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) ms.push_back(std::stoi(tok));
    require(!ms.empty(), ErrorCode::InvalidArgument, "empty m grid");
  }
  const bool run_bnb = solvers == "both" || solvers == "bnb";
  const bool run_ex = solvers == "both" || solvers == "exhaustive";
  require(run_bnb || run_ex, ErrorCode::InvalidArgument, "solvers must be both|bnb|exhaustive");

  // feature-driven fixture: class-0 blob scaled to the requested vertex count
  const int segments = 25;
  const int rings = std::max(1, (n - 2) / segments);
  TriMesh base = synthetic::uv_sphere(rings, segments);
  std::vector<Eigen::Vector3d> verts = base.vertices;
  for (auto& p : verts) p = synthetic::class_radius(0, p.normalized()) * p;
  const TriMesh mesh = make_mesh(std::move(verts), base.faces);

  std::ostringstream csv;
  csv << "m,n,solver,wall_ms,heap_pops,paths_solved\n";
  RunConfig feature_config = opt.config;
  const MeshFeatures target = compute_mesh_features(mesh, feature_config);
  for (int m : ms) {
    const Curve2D raw_query = synthetic::class_query(0, m);
    const CurveFeatures query = compute_curve_features(raw_query, feature_config);
    for (int pass = 0; pass < 2; ++pass) {
      const bool bnb = pass == 0;
      if ((bnb && !run_bnb) || (!bnb && !run_ex)) continue;
      RunConfig run = opt.config;
      run.solver = bnb ? SolverKind::BranchAndBound : SolverKind::Exhaustive;
      const MatchResult result = match_features(query, target, run);
      csv << m << ',' << target.mesh.vertex_count() << ',' << (bnb ? "bnb" : "exhaustive") << ','
          << result.stats.wall_seconds * 1e3 << ',' << result.stats.heap_pops << ','
          << result.stats.paths_solved << '\n';
    }
  }
  if (out_file.empty())
    std::cout << csv.str();
  else
    write_text(out_file, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic matching of closed planar curves onto 3D triangle meshes"};
  app.require_subcommand(1);

  CliOptions opt;

  // features
  auto* features = app.add_subcommand("features", "precompute and cache shape features");
  fs::path features_input;
  bool features_force = false;
  std::string features_labels_out;
  features->add_option("input", features_input, "curve (.csv/.json) or mesh (.off/.obj)")
      ->required();
  features->add_flag("--force", features_force, "recompute even on cache hit");
  features->add_option("--labels-out", features_labels_out,
                       "write per-vertex segment labels as a JSON array");
  add_config_flags(features, opt);

  // match
  auto* match = app.add_subcommand("match", "match a curve onto a mesh");
  fs::path match_curve, match_mesh;
  bool match_stats = false;
  std::string match_out, match_dump_cost;
  match->add_option("curve", match_curve)->required();
  match->add_option("mesh", match_mesh)->required();
  match->add_flag("--stats", match_stats, "include solver statistics in the JSON");
  match->add_option("-o,--out", match_out, "write JSON to a file instead of stdout");
  match->add_option("--dump-cost", match_dump_cost,
                    "dump the cost matrix to a binary container for debugging");
  add_config_flags(match, opt);

  // retrieve
  auto* retrieve = app.add_subcommand("retrieve", "rank a mesh directory by matching energy");
  fs::path retrieve_curve, retrieve_dir;
  std::string retrieve_labels, retrieve_class, retrieve_out;
  bool retrieve_csv = false;
  retrieve->add_option("curve", retrieve_curve, "query curve file, or a directory of queries")
      ->required();
  retrieve->add_option("mesh_dir", retrieve_dir)->required();
  retrieve->add_option("--labels", retrieve_labels, "JSON manifest mapping mesh files to classes");
  retrieve->add_option("--query-class", retrieve_class, "positive class for average precision");
  retrieve->add_option("-o,--out", retrieve_out, "output file prefix (.csv and .json)");
  retrieve->add_flag("--csv", retrieve_csv, "print CSV instead of JSON on stdout");
  add_config_flags(retrieve, opt);

  // eval
  auto* eval = app.add_subcommand("eval", "matching error against ground truth");
  fs::path eval_curve, eval_mesh, eval_gt;
  int eval_thresholds = 101;
  bool eval_json = false;
  std::string eval_out;
  eval->add_option("curve", eval_curve)->required();
  eval->add_option("mesh", eval_mesh)->required();
  eval->add_option("--ground-truth", eval_gt, "JSON array of mesh vertices per curve vertex")
      ->required();
  eval->add_option("--thresholds", eval_thresholds, "cumulative-curve grid size");
  eval->add_flag("--json", eval_json, "emit a JSON profile instead of CSV");
  eval->add_option("-o,--out", eval_out, "write to a file instead of stdout");
  add_config_flags(eval, opt);

  // bench
  auto* bench = app.add_subcommand("bench", "solver runtime sweep on synthetic fixtures");
  std::string bench_m = "25,50,100,200,400";
  int bench_n = 500;
  std::string bench_solvers = "both";
  std::string bench_out;
  bench->add_option("--m-grid", bench_m, "comma-separated curve sizes");
  bench->add_option("-n,--mesh-size", bench_n, "approximate mesh vertex count");
  bench->add_option("--solvers", bench_solvers, "both|bnb|exhaustive");
  bench->add_option("-o,--out", bench_out, "write CSV to a file instead of stdout");
  add_config_flags(bench, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (features->parsed())
      return cmd_features(features_input, opt, features_force, features_labels_out);
    if (match->parsed())
      return cmd_match(match_curve, match_mesh, opt, match_stats, match_out, match_dump_cost);
    if (retrieve->parsed())
      return cmd_retrieve(retrieve_curve, retrieve_dir, opt, retrieve_labels, retrieve_class,
                          retrieve_out, retrieve_csv);
    if (eval->parsed())
      return cmd_eval(eval_curve, eval_mesh, eval_gt, opt, eval_thresholds, eval_json, eval_out);
    if (bench->parsed()) return cmd_bench(opt, bench_m, bench_n, bench_solvers, bench_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
