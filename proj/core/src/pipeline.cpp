#include "curvematch/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "curvematch/container.hpp"
#include "curvematch/errors.hpp"
#include "curvematch/geodesics.hpp"
#include "curvematch/laplacian.hpp"
#include "curvematch/parallel.hpp"
#include "text_io.hpp"

namespace curvematch {

void RunConfig::validate() const {
  require(k >= 2, ErrorCode::InvalidArgument, "k must be >= 2");
  require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
  require(r >= 2 && r <= 16, ErrorCode::InvalidArgument, "r must be in [2, 16]");
  require(tau > 0, ErrorCode::InvalidArgument, "tau must be positive");
  require(max_area_factor > 0, ErrorCode::InvalidArgument, "max_area_factor must be positive");
  require(threads >= 0, ErrorCode::InvalidArgument, "threads must be >= 0");
}

std::string RunConfig::feature_key() const {
  std::ostringstream key;
  key << "k=" << k << ";d=" << d << ";r=" << r
      << ";max_area_factor=" << detail::format_double(max_area_factor) << ";seed=" << seed;
  return key.str();
}

CurveFeatures compute_curve_features(const Curve2D& raw, const RunConfig& config) {
  config.validate();
  CurveFeatures out;
  // Normalize by the geodesic diameter of the query's solid, the quantity
  // commensurate with the target mesh's unit-diameter normalization.
  out.solid = tessellate_solid(raw, raw.area() * config.max_area_factor);
  out.pre.intrinsic_diameter = geodesic_diameter(out.solid, DiameterMode::Auto, config.threads);
  require(out.pre.intrinsic_diameter > 0, ErrorCode::DegenerateCurve,
          "query solid has zero geodesic diameter");
  out.curve = scaled(raw, 1.0 / out.pre.intrinsic_diameter);
  for (auto& p : out.solid.vertices) p /= out.pre.intrinsic_diameter;
  const LaplacianPair lap = build_laplacian_2d(out.solid);
  require(config.k < out.solid.vertex_count(), ErrorCode::InvalidArgument,
          "solid too coarse for k eigenpairs; lower k or max_area_factor");
  out.basis = eigendecompose(lap, config.k);
  const DescriptorField hks = compute_hks(out.basis, config.d);
  const DescriptorField wks = compute_wks(out.basis, config.d);
  out.solid_labels = segment_shape(out.basis, out.solid.adjacency, config.r);
  out.pre.region_sig = region_signatures(out.solid_labels, hks.values, wks.values, lap.mass);
  out.pre.eigenvalues = out.basis.eigenvalues;

  out.pre.field.hks = restrict_to_boundary(hks, out.solid).values;
  out.pre.field.wks = restrict_to_boundary(wks, out.solid).values;
  out.pre.field.labels.resize(out.curve.size());
  for (int i = 0; i < out.curve.size(); ++i)
    out.pre.field.labels[i] = out.solid_labels.labels[out.solid.boundary_map[i]];
  return out;
}

MeshFeatures compute_mesh_features(const TriMesh& raw, const RunConfig& config) {
  config.validate();
  require(config.k < raw.vertex_count(), ErrorCode::InvalidArgument,
          "mesh too coarse for k eigenpairs");
  MeshFeatures out;
  out.pre.intrinsic_diameter = geodesic_diameter(raw, DiameterMode::Auto, config.threads);
  require(out.pre.intrinsic_diameter > 0, ErrorCode::NumericalDegeneracy,
          "mesh geodesic diameter is zero");
  out.mesh = scaled(raw, 1.0 / out.pre.intrinsic_diameter);

  const LaplacianPair lap = build_laplacian_3d(out.mesh);
  out.basis = eigendecompose(lap, config.k);
  const DescriptorField hks = compute_hks(out.basis, config.d);
  const DescriptorField wks = compute_wks(out.basis, config.d);
  out.labels = segment_shape(out.basis, out.mesh.adjacency, config.r);
  out.pre.region_sig = region_signatures(out.labels, hks.values, wks.values, lap.mass);
  out.pre.eigenvalues = out.basis.eigenvalues;
  out.pre.field.hks = hks.values;
  out.pre.field.wks = wks.values;
  out.pre.field.labels = out.labels.labels;
  return out;
}

CostMatrix build_pair_cost(const PrecomputedFeatures& query, const PrecomputedFeatures& target,
                           const RunConfig& config) {
  FeatureField fm = query.field;
  FeatureField fn = target.field;
  if (config.use_segments) {
    const RegionAssignment assignment = assign_regions(query.region_sig, target.region_sig);
    fm.labels = relabel(fm.labels, assignment);
  } else {
    std::fill(fm.labels.begin(), fm.labels.end(), 0);
    std::fill(fn.labels.begin(), fn.labels.end(), 0);
  }
  return build_cost_matrix(fm, fn, config.tau, config.threads);
}

MatchResult match_features(const Curve2D& normalized_curve, const PrecomputedFeatures& query,
                           const TriMesh& normalized_mesh, const PrecomputedFeatures& target,
                           const RunConfig& config) {
  config.validate();
  const CostMatrix cost = build_pair_cost(query, target, config);
  if (config.solver == SolverKind::Exhaustive)
    return exhaustive_match(cost, normalized_curve, normalized_mesh, config.threads);
  GeodesicCache geodesics(normalized_mesh);
  return branch_and_bound_match(cost, normalized_curve, normalized_mesh, geodesics,
                                config.threads);
}

MatchResult match_features(const CurveFeatures& query, const MeshFeatures& target,
                           const RunConfig& config) {
  return match_features(query.curve, query.pre, target.mesh, target.pre, config);
}

RetrievalRanking retrieval_rank(const Curve2D& normalized_curve, const PrecomputedFeatures& query,
                                const std::vector<const TriMesh*>& meshes,
                                const std::vector<const PrecomputedFeatures*>& targets,
                                const std::vector<int>& classes, const RunConfig& config,
                                int query_id) {
  config.validate();
  require(meshes.size() == targets.size(), ErrorCode::InvalidArgument,
          "meshes and features must align");
  require(classes.empty() || classes.size() == targets.size(), ErrorCode::InvalidArgument,
          "class list must align with targets");
  const int count = static_cast<int>(targets.size());
  std::vector<RetrievalEntry> entries(count);
  RunConfig per_target = config;
  per_target.threads = 1;  // parallelism is across targets
  parallel_for(0, count, config.threads, [&](int t) {
    const MatchResult result =
        match_features(normalized_curve, query, *meshes[t], *targets[t], per_target);
    entries[t] = {t, result.energy(), classes.empty() ? -1 : classes[t]};
  });
  return make_ranking(query_id, std::move(entries));
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t file_content_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in.good()) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

namespace {
constexpr char kCacheMagic[4] = {'C', 'M', 'F', 'C'};
constexpr std::uint32_t kCacheVersion = 1;
}  // namespace

void save_precomputed(const PrecomputedFeatures& pre, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(kCacheMagic, 4);
  out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof(kCacheVersion));
  out.write(reinterpret_cast<const char*>(&pre.intrinsic_diameter), sizeof(double));
  write_matrix(out, pre.eigenvalues);
  write_matrix(out, pre.field.hks);
  write_matrix(out, pre.field.wks);
  write_matrix(out, pre.region_sig);
  const std::uint64_t count = pre.field.labels.size();
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  for (int l : pre.field.labels) {
    const std::int32_t v = l;
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  require(out.good(), ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

PrecomputedFeatures load_precomputed(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  char magic[4] = {};
  in.read(magic, 4);
  require(in.good() && std::equal(magic, magic + 4, kCacheMagic), ErrorCode::ParseError,
          "bad feature-cache magic");
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  require(in.good() && version == kCacheVersion, ErrorCode::ParseError,
          "unsupported feature-cache version");
  PrecomputedFeatures pre;
  in.read(reinterpret_cast<char*>(&pre.intrinsic_diameter), sizeof(double));
  require(in.good() && pre.intrinsic_diameter > 0, ErrorCode::ParseError,
          "bad intrinsic diameter in cache");
  pre.eigenvalues = read_matrix(in);
  pre.field.hks = read_matrix(in);
  pre.field.wks = read_matrix(in);
  pre.region_sig = read_matrix(in);
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  require(in.good() && count == static_cast<std::uint64_t>(pre.field.hks.rows()),
          ErrorCode::ParseError, "label count does not match descriptor rows");
  pre.field.labels.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::int32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    pre.field.labels[i] = v;
  }
  require(in.good(), ErrorCode::ParseError, "truncated feature cache");
  return pre;
}

}  // namespace curvematch
