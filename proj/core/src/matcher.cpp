#include "curvematch/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include <json.hpp>

#include "curvematch/errors.hpp"
#include "curvematch/parallel.hpp"

namespace curvematch {

std::vector<ProductVertex> product_neighbors(const ProductVertex& v, const TriMesh& mesh, int m) {
  std::vector<ProductVertex> out;
  if (v.layer >= m) return out;  // layer m is the sink copy of layer 0
  const auto& nbrs = mesh.adjacency[v.mesh_vertex];
  out.reserve(2 * nbrs.size() + 1);
  for (int j : nbrs) out.push_back({v.layer, j});
  out.push_back({v.layer + 1, v.mesh_vertex});
  for (int j : nbrs) out.push_back({v.layer + 1, j});
  return out;
}

double product_edge_cost(const ProductVertex& a, const ProductVertex& b, const CostMatrix& cost,
                         const Curve2D& curve, const TriMesh& mesh) {
  const int m = curve.size();
  require(a.layer >= 0 && a.layer <= m && b.layer >= 0 && b.layer <= m,
          ErrorCode::InvalidArgument, "layer out of range");
  require(a.mesh_vertex >= 0 && a.mesh_vertex < mesh.vertex_count() && b.mesh_vertex >= 0 &&
              b.mesh_vertex < mesh.vertex_count(),
          ErrorCode::InvalidArgument, "mesh vertex out of range");

  const auto& nbrs = mesh.adjacency[a.mesh_vertex];
  const bool adjacent = std::binary_search(nbrs.begin(), nbrs.end(), b.mesh_vertex);
  const bool ok = a.layer < m &&
                  ((b.layer == a.layer && adjacent) ||
                   (b.layer == a.layer + 1 && (adjacent || b.mesh_vertex == a.mesh_vertex)));
  require(ok, ErrorCode::NotAnEdge, "vertex pair violates the product edge rules");

  const int ia = a.layer % m;
  const int ib = b.layer % m;
  const double d2 = (curve.points[ia] - curve.points[ib]).squaredNorm();
  const double d3 = (mesh.vertices[a.mesh_vertex] - mesh.vertices[b.mesh_vertex]).squaredNorm();
  return 0.5 * (cost.D(ia, a.mesh_vertex) + cost.D(ib, b.mesh_vertex)) * std::sqrt(d2 + d3);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapItem {
  double dist;
  int j;
};

struct HeapGreater {
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    return a.dist > b.dist || (a.dist == b.dist && a.j > b.j);
  }
};

// Shortest paths on the implicit product graph with one priority heap per
// layer: edges never decrease the layer, so layer i settles completely before
// layer i+1 starts.
class LayeredDijkstra {
 public:
  LayeredDijkstra(const CostMatrix& cost, const Curve2D& curve, const TriMesh& mesh)
      : D_(cost.D), m_(curve.size()), n_(mesh.vertex_count()) {
    row_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v)
      row_[v + 1] = row_[v] + static_cast<int>(mesh.adjacency[v].size());
    nbr_.resize(row_[n_]);
    elen_.resize(row_[n_]);
    elen2_.resize(row_[n_]);
    for (int v = 0; v < n_; ++v) {
      int e = row_[v];
      for (int w : mesh.adjacency[v]) {
        nbr_[e] = w;
        elen2_[e] = (mesh.vertices[w] - mesh.vertices[v]).squaredNorm();
        elen_[e] = std::sqrt(elen2_[e]);
        ++e;
      }
    }
    clen_.resize(m_);
    clen2_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      clen2_[i] = (curve.points[(i + 1) % m_] - curve.points[i]).squaredNorm();
      clen_[i] = std::sqrt(clen2_[i]);
    }
    dist_.resize(static_cast<size_t>(m_ + 1) * n_);
    parent_.resize(dist_.size());
  }

  // Multi-source run from {0} x sources up to layer m. Parent encoding:
  // (prev_j << 1) | 1 for a same-layer move, prev_j << 1 for a move from the
  // layer below, -1 at sources.
  void run(std::span<const int> sources) {
    std::fill(dist_.begin(), dist_.end(), kInf);
    std::fill(parent_.begin(), parent_.end(), -1);
    Heap cur, next;
    for (int s : sources) {
      dist_[s] = 0.0;
      cur.push({0.0, s});
    }
    for (int layer = 0; layer < m_; ++layer) {
      const size_t off = static_cast<size_t>(layer) * n_;
      const size_t off_up = off + n_;
      const int ib = (layer + 1) % m_;  // layer itself is < m, so its curve index is layer
      const double lc = clen_[layer];
      const double lc2 = clen2_[layer];
      const double* drow_a = &D_(layer, 0);
      const double* drow_b = &D_(ib, 0);
      while (!cur.empty()) {
        const auto [d, j] = cur.top();
        cur.pop();
        ++pops_;
        if (d > dist_[off + j]) continue;
        const double dj = drow_a[j];
        for (int e = row_[j]; e < row_[j + 1]; ++e) {  // same-layer
          const int j2 = nbr_[e];
          const double nd = d + 0.5 * (dj + drow_a[j2]) * elen_[e];
          if (nd < dist_[off + j2]) {
            dist_[off + j2] = nd;
            parent_[off + j2] = (j << 1) | 1;
            cur.push({nd, j2});
          }
        }
        {  // vertical
          const double nd = d + 0.5 * (dj + drow_b[j]) * lc;
          if (nd < dist_[off_up + j]) {
            dist_[off_up + j] = nd;
            parent_[off_up + j] = j << 1;
            next.push({nd, j});
          }
        }
        for (int e = row_[j]; e < row_[j + 1]; ++e) {  // diagonal
          const int j2 = nbr_[e];
          const double nd = d + 0.5 * (dj + drow_b[j2]) * std::sqrt(lc2 + elen2_[e]);
          if (nd < dist_[off_up + j2]) {
            dist_[off_up + j2] = nd;
            parent_[off_up + j2] = j << 1;
            next.push({nd, j2});
          }
        }
      }
      cur = std::move(next);
      next = Heap();
    }
    while (!cur.empty()) {  // layer m has no outgoing edges
      cur.pop();
      ++pops_;
    }
  }

  double dist_at(int layer, int j) const { return dist_[static_cast<size_t>(layer) * n_ + j]; }

  // Smallest (distance, j) target at layer m among the given candidates.
  int best_target(std::span<const int> candidates) const {
    int best = -1;
    for (int j : candidates) {
      if (best < 0 || dist_at(m_, j) < dist_at(m_, best) ||
          (dist_at(m_, j) == dist_at(m_, best) && j < best))
        best = j;
    }
    return best;
  }

  MatchPath extract(int target_j) const {
    MatchPath path;
    path.energy = dist_at(m_, target_j);
    require(std::isfinite(path.energy), ErrorCode::InvalidArgument,
            "target unreachable (empty source set?)");
    int layer = m_, j = target_j;
    std::vector<ProductVertex> rev;
    rev.reserve(2 * m_ + 2);
    const size_t cap = dist_.size() + 2;
    while (rev.size() < cap) {
      rev.push_back({layer, j});
      const int p = parent_[static_cast<size_t>(layer) * n_ + j];
      if (p < 0) break;
      if (p & 1) {
        j = p >> 1;  // same layer
      } else {
        j = p >> 1;
        --layer;
      }
    }
    require(layer == 0, ErrorCode::NumericalDegeneracy, "parent chain did not reach layer 0");
    path.vertices.assign(rev.rbegin(), rev.rend());
    return path;
  }

  std::uint64_t pops() const { return pops_; }
  int m() const { return m_; }

 private:
  using Heap = std::priority_queue<HeapItem, std::vector<HeapItem>, HeapGreater>;

  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& D_;
  int m_, n_;
  std::vector<int> row_, nbr_;
  std::vector<double> elen_, elen2_, clen_, clen2_;
  std::vector<double> dist_;
  std::vector<int> parent_;
  std::uint64_t pops_ = 0;
};

void validate_inputs(const CostMatrix& cost, const Curve2D& curve, const TriMesh& mesh) {
  require(cost.rows() == curve.size() && cost.cols() == mesh.vertex_count(),
          ErrorCode::DimensionMismatch, "cost matrix does not match curve/mesh sizes");
  require(curve.size() >= 3, ErrorCode::InvalidArgument, "curve must have at least 3 points");
}

}  // namespace

MatchPath shortest_path_region(std::span<const int> region, const CostMatrix& cost,
                               const Curve2D& curve, const TriMesh& mesh, SolverStats* stats) {
  validate_inputs(cost, curve, mesh);
  require(!region.empty(), ErrorCode::InvalidArgument, "region must be nonempty");
  LayeredDijkstra solver(cost, curve, mesh);
  solver.run(region);
  MatchPath path = solver.extract(solver.best_target(region));
  if (stats) {
    stats->paths_solved += 1;
    stats->heap_pops += solver.pops();
  }
  return path;
}

MatchResult exhaustive_match(const CostMatrix& cost, const Curve2D& curve, const TriMesh& mesh,
                             int threads) {
  validate_inputs(cost, curve, mesh);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = mesh.vertex_count();
  const int workers = std::min(resolve_thread_count(threads), n);

  struct ThreadBest {
    double energy = kInf;
    int j = -1;
    MatchPath path;
    std::uint64_t pops = 0;
  };
  std::vector<ThreadBest> best(workers);

  const int chunk = (n + workers - 1) / workers;
  parallel_for(0, workers, workers, [&](int t) {
    LayeredDijkstra solver(cost, curve, mesh);
    ThreadBest local;
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    for (int j = lo; j < hi; ++j) {
      const int source[1] = {j};
      solver.run(source);
      const double e = solver.dist_at(curve.size(), j);
      if (e < local.energy) {  // j ascends, so strict improvement keeps the smallest j
        local.energy = e;
        local.j = j;
        local.path = solver.extract(j);
      }
    }
    local.pops = solver.pops();
    best[t] = std::move(local);
  });

  MatchResult result;
  result.stats.paths_solved = n;
  int win = -1;
  for (int t = 0; t < workers; ++t) {
    result.stats.heap_pops += best[t].pops;
    if (best[t].j < 0) continue;
    if (win < 0 || best[t].energy < best[win].energy) win = t;  // chunks ascend in j
  }
  require(win >= 0, ErrorCode::InvalidArgument, "no feasible closed path");
  result.path = std::move(best[win].path);
  result.correspondences = path_correspondences(result.path, curve.size());
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

MatchResult branch_and_bound_match(const CostMatrix& cost, const Curve2D& curve,
                                   const TriMesh& mesh, GeodesicCache& geodesics, int threads) {
  (void)threads;  // the bound-ordered queue is inherently sequential
  validate_inputs(cost, curve, mesh);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = mesh.vertex_count();

  struct Node {
    double bound;
    long seq;
    std::vector<int> region;
  };
  struct NodeGreater {
    bool operator()(const Node& a, const Node& b) const {
      return a.bound > b.bound || (a.bound == b.bound && a.seq > b.seq);
    }
  };
  std::priority_queue<Node, std::vector<Node>, NodeGreater> queue;

  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  long seq = 0;
  queue.push({0.0, seq++, std::move(all)});

  LayeredDijkstra solver(cost, curve, mesh);
  double incumbent = kInf;
  MatchPath best;
  MatchResult result;

  while (!queue.empty() && queue.top().bound < incumbent) {
    Node node = queue.top();
    queue.pop();

    solver.run(node.region);
    const int target = solver.best_target(node.region);
    MatchPath open_path = solver.extract(target);
    ++result.stats.paths_solved;

    const int start = open_path.vertices.front().mesh_vertex;
    const int end = open_path.vertices.back().mesh_vertex;
    if (start == end) {
      if (open_path.energy < incumbent) {
        incumbent = open_path.energy;
        best = std::move(open_path);
      }
      continue;  // remaining regions with smaller bounds still get processed
    }

    // Split by geodesic proximity to the two endpoints; ties go with start.
    const Eigen::VectorXd& d_start = geodesics.distances_from(start);
    const Eigen::VectorXd& d_end = geodesics.distances_from(end);
    std::vector<int> r1, r2;
    r1.reserve(node.region.size());
    r2.reserve(node.region.size());
    for (int x : node.region)
      (d_start[x] <= d_end[x] ? r1 : r2).push_back(x);
    // start lands in r1 and end in r2, so both shrink strictly
    queue.push({open_path.energy, seq++, std::move(r1)});
    queue.push({open_path.energy, seq++, std::move(r2)});
  }

  require(std::isfinite(incumbent), ErrorCode::InvalidArgument, "no feasible closed path");
  result.stats.heap_pops = solver.pops();
  result.path = std::move(best);
  result.correspondences = path_correspondences(result.path, curve.size());
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<std::vector<int>> path_correspondences(const MatchPath& path, int m) {
  require(path.closed(m), ErrorCode::InvalidArgument, "path is not a closed matching");
  std::vector<std::vector<int>> groups(m);
  for (size_t idx = 0; idx + 1 < path.vertices.size(); ++idx) {
    const auto& v = path.vertices[idx];
    groups[v.layer % m].push_back(v.mesh_vertex);
  }
  for (int i = 0; i < m; ++i)
    require(!groups[i].empty(), ErrorCode::NumericalDegeneracy,
            "curve vertex " + std::to_string(i) + " has no correspondence");
  return groups;
}

double recompute_energy(const MatchPath& path, const CostMatrix& cost, const Curve2D& curve,
                        const TriMesh& mesh) {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < path.vertices.size(); ++i)
    acc += product_edge_cost(path.vertices[i], path.vertices[i + 1], cost, curve, mesh);
  return acc;
}

std::string match_result_json(const MatchResult& result, bool include_stats) {
  nlohmann::json doc;
  doc["energy"] = result.energy();
  auto& path = doc["path"] = nlohmann::json::array();
  for (const auto& v : result.path.vertices) path.push_back({v.layer, v.mesh_vertex});
  doc["correspondences"] = result.correspondences;
  if (include_stats) {
    doc["stats"] = {{"paths_solved", result.stats.paths_solved},
                    {"heap_pops", result.stats.heap_pops},
                    {"wall_seconds", result.stats.wall_seconds}};
  }
  return doc.dump();
}

}  // namespace curvematch
