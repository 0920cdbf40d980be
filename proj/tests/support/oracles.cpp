#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

using curvematch::CostMatrix;
using curvematch::Curve2D;
using curvematch::TriMesh;

Eigen::VectorXd bellman_ford(const TriMesh& mesh, int source) {
  const int n = mesh.vertex_count();
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  dist[source] = 0.0;
  for (int pass = 0; pass < n; ++pass) {
    bool changed = false;
    for (const auto& e : mesh.edges) {
      const double len = (mesh.vertices[e[0]] - mesh.vertices[e[1]]).norm();
      if (dist[e[0]] + len < dist[e[1]]) {
        dist[e[1]] = dist[e[0]] + len;
        changed = true;
      }
      if (dist[e[1]] + len < dist[e[0]]) {
        dist[e[0]] = dist[e[1]] + len;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist;
}

DenseEigen jacobi_eigen(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass) {
  const int n = static_cast<int>(mass.size());
  const Eigen::VectorXd inv_sqrt_m = mass.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd a = inv_sqrt_m.asDiagonal() * stiffness * inv_sqrt_m.asDiagonal();
  a = 0.5 * (a + a.transpose());  // kill asymmetry from rounding
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // rotate rows/cols p, q
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });

  DenseEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues[i] = a(order[i], order[i]);
    out.eigenvectors.col(i) = inv_sqrt_m.asDiagonal() * v.col(order[i]);
  }
  return out;
}

namespace {

// DFS enumeration of simple product paths under the product edge rules:
// same-layer steps to mesh neighbors, plus vertical/diagonal steps to the next
// layer; nothing leaves layer m.
struct Enumerator {
  const CostMatrix& cost;
  const Curve2D& curve;
  const TriMesh& mesh;
  int m, n;
  std::vector<char> visited;  // (m+1) * n
  double best = std::numeric_limits<double>::infinity();
  int target = -1;

  Enumerator(const CostMatrix& c, const Curve2D& cu, const TriMesh& me)
      : cost(c), curve(cu), mesh(me), m(cu.size()), n(me.vertex_count()),
        visited(static_cast<size_t>(m + 1) * n, 0) {}

  double edge_cost(int la, int ja, int lb, int jb) const {
    const int ia = la % m, ib = lb % m;
    const double d2 = (curve.points[ia] - curve.points[ib]).squaredNorm();
    const double d3 = (mesh.vertices[ja] - mesh.vertices[jb]).squaredNorm();
    return 0.5 * (cost.D(ia, ja) + cost.D(ib, jb)) * std::sqrt(d2 + d3);
  }

  void dfs(int layer, int j, double acc) {
    if (acc >= best) return;
    if (layer == m) {
      if (j == target) best = acc;
      return;
    }
    visited[static_cast<size_t>(layer) * n + j] = 1;
    for (int j2 : mesh.adjacency[j]) {  // same layer
      if (!visited[static_cast<size_t>(layer) * n + j2])
        dfs(layer, j2, acc + edge_cost(layer, j, layer, j2));
    }
    if (!visited[static_cast<size_t>(layer + 1) * n + j])  // vertical
      dfs(layer + 1, j, acc + edge_cost(layer, j, layer + 1, j));
    for (int j2 : mesh.adjacency[j]) {  // diagonal
      if (!visited[static_cast<size_t>(layer + 1) * n + j2])
        dfs(layer + 1, j2, acc + edge_cost(layer, j, layer + 1, j2));
    }
    visited[static_cast<size_t>(layer) * n + j] = 0;
  }
};

}  // namespace

double min_closed_path_energy(const CostMatrix& cost, const Curve2D& curve, const TriMesh& mesh) {
  Enumerator e(cost, curve, mesh);
  for (int j = 0; j < mesh.vertex_count(); ++j) {
    e.target = j;
    e.dfs(0, j, 0.0);
  }
  return e.best;
}

double min_region_path_energy(const std::vector<int>& region, const CostMatrix& cost,
                              const Curve2D& curve, const TriMesh& mesh) {
  Enumerator e(cost, curve, mesh);
  double best = std::numeric_limits<double>::infinity();
  for (int start : region) {
    for (int end : region) {
      e.best = best;
      e.target = end;
      e.dfs(0, start, 0.0);
      best = e.best;
    }
  }
  return best;
}

double brute_force_assignment(const Eigen::MatrixXd& cost) {
  const int r = static_cast<int>(cost.rows());
  if (r > 9) throw std::runtime_error("brute_force_assignment: r too large");
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = 0.0;
    for (int i = 0; i < r; ++i) acc += cost(i, perm[i]);
    best = std::min(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Curve2D regular_polygon(int m, double radius) {
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double a = 2.0 * M_PI * i / m;
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return curvematch::make_curve(std::move(pts));
}

CostMatrix random_cost(int m, int n, std::uint64_t seed, double tau) {
  TestRng rng(seed);
  CostMatrix cost;
  cost.tau = tau;
  cost.D.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) cost.D(i, j) = rng.uniform();
  return cost;
}

TriMesh zigzag_strip(int vertices, double step) {
  std::vector<Eigen::Vector3d> verts;
  for (int i = 0; i < vertices; ++i)
    verts.emplace_back(step * i, (i % 2) * 0.02 * step, 0.0);
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i + 2 < vertices; ++i) faces.push_back({i, i + 1, i + 2});
  return curvematch::make_mesh(std::move(verts), std::move(faces));
}

}  // namespace oracles
