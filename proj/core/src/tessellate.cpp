#include "curvematch/tessellate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "curvematch/errors.hpp"
#include "predicates.hpp"

namespace curvematch {

using detail::incircle;
using detail::orient2d;
using detail::segments_intersect;
using Vec2 = Eigen::Vector2d;

double PlanarSolidMesh::face_area(int f) const {
  const auto& t = faces[f];
  const Vec2 u = vertices[t[1]] - vertices[t[0]];
  const Vec2 v = vertices[t[2]] - vertices[t[0]];
  return 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
}

double PlanarSolidMesh::total_area() const {
  double acc = 0.0;
  for (int f = 0; f < face_count(); ++f) acc += face_area(f);
  return acc;
}

double default_max_area(const Curve2D& curve) { return curve.area() / 1000.0; }

namespace {

struct Tri {
  std::array<int, 3> v;   // CCW
  std::array<int, 3> nb;  // nb[k]: neighbor across the edge opposite v[k]
  bool alive = true;
};

class Triangulator {
 public:
  explicit Triangulator(const Curve2D& curve)
      : m_(curve.size()), pts_(curve.points) {}

  void run(double max_area);
  PlanarSolidMesh finish() &&;

 private:
  int m_;
  std::vector<Vec2> pts_;
  std::vector<Tri> tris_;
  std::deque<std::pair<int, int>> flip_queue_;  // (triangle, edge slot)

  bool is_constrained(int a, int b) const {
    if (a >= m_ || b >= m_) return false;
    return b == (a + 1) % m_ || a == (b + 1) % m_;
  }

  double tri_area(int t) const {
    const auto& v = tris_[t].v;
    const Vec2 u = pts_[v[1]] - pts_[v[0]];
    const Vec2 w = pts_[v[2]] - pts_[v[0]];
    return 0.5 * (u.x() * w.y() - u.y() * w.x());
  }

  double min_angle_deg(int t) const;
  Vec2 centroid(int t) const {
    const auto& v = tris_[t].v;
    return (pts_[v[0]] + pts_[v[1]] + pts_[v[2]]) / 3.0;
  }

  static int slot_of(const Tri& t, int vertex) {
    for (int k = 0; k < 3; ++k)
      if (t.v[k] == vertex) return k;
    return -1;
  }

  void patch_neighbor(int t, int old_nb, int new_nb) {
    if (t < 0) return;
    for (int k = 0; k < 3; ++k)
      if (tris_[t].nb[k] == old_nb) {
        tris_[t].nb[k] = new_nb;
        return;
      }
  }

  void push_edges(int t) {
    for (int k = 0; k < 3; ++k) flip_queue_.emplace_back(t, k);
  }

  void ear_clip();
  void link_adjacency();
  void lawson_flips();
  bool try_flip(int t, int k);

  bool strictly_inside(int t, const Vec2& p) const {
    const auto& v = tris_[t].v;
    return orient2d(pts_[v[0]], pts_[v[1]], p) > 0 &&
           orient2d(pts_[v[1]], pts_[v[2]], p) > 0 &&
           orient2d(pts_[v[2]], pts_[v[0]], p) > 0;
  }

  int find_strictly_containing(const Vec2& p) const {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
      if (tris_[t].alive && strictly_inside(t, p)) return t;
    return -1;
  }

  bool boundary_visible(const Vec2& a, const Vec2& b) const {
    for (int i = 0; i < m_; ++i)
      if (segments_intersect(a, b, pts_[i], pts_[(i + 1) % m_])) return false;
    return true;
  }

  bool circumcenter(int t, Vec2& out) const;
  int insert_in_triangle(const Vec2& p, int t, bool flips);
  void refine(double max_area);
};

double Triangulator::min_angle_deg(int t) const {
  const auto& v = tris_[t].v;
  double best = 180.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2 u = pts_[v[(k + 1) % 3]] - pts_[v[k]];
    const Vec2 w = pts_[v[(k + 2) % 3]] - pts_[v[k]];
    const double cosang = u.dot(w) / std::max(u.norm() * w.norm(), 1e-300);
    best = std::min(best, std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / M_PI);
  }
  return best;
}

void Triangulator::ear_clip() {
  std::vector<int> next(m_), prev(m_);
  for (int i = 0; i < m_; ++i) {
    next[i] = (i + 1) % m_;
    prev[i] = (i + m_ - 1) % m_;
  }
  int remaining = m_;
  int cursor = 0;

  auto inside_closed = [&](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    return orient2d(a, b, p) >= 0 && orient2d(b, c, p) >= 0 && orient2d(c, a, p) >= 0;
  };
  auto is_ear = [&](int v) {
    const int a = prev[v], c = next[v];
    if (orient2d(pts_[a], pts_[v], pts_[c]) <= 0) return false;
    for (int u = next[c]; u != a; u = next[u])
      if (inside_closed(pts_[a], pts_[v], pts_[c], pts_[u])) return false;
    return true;
  };

  while (remaining > 3) {
    bool clipped = false;
    int v = cursor;
    for (int scan = 0; scan < remaining; ++scan, v = next[v]) {
      if (!is_ear(v)) continue;
      tris_.push_back({{prev[v], v, next[v]}, {-1, -1, -1}, true});
      next[prev[v]] = next[v];
      prev[next[v]] = prev[v];
      cursor = next[v];
      --remaining;
      clipped = true;
      break;
    }
    require(clipped, ErrorCode::DegenerateCurve, "polygon ear clipping stalled");
  }
  const int a = cursor, b = next[a], c = next[b];
  require(orient2d(pts_[a], pts_[b], pts_[c]) > 0, ErrorCode::DegenerateCurve,
          "final polygon triangle is degenerate");
  tris_.push_back({{a, b, c}, {-1, -1, -1}, true});
}

void Triangulator::link_adjacency() {
  std::map<std::pair<int, int>, std::pair<int, int>> open_edges;  // sorted pair -> (tri, slot)
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = tris_[t].v[(k + 1) % 3];
      const int b = tris_[t].v[(k + 2) % 3];
      const auto key = std::minmax(a, b);
      auto it = open_edges.find(key);
      if (it == open_edges.end()) {
        open_edges[key] = {t, k};
      } else {
        tris_[t].nb[k] = it->second.first;
        tris_[it->second.first].nb[it->second.second] = t;
        open_edges.erase(it);
      }
    }
  }
}

bool Triangulator::try_flip(int t, int k) {
  if (!tris_[t].alive) return false;
  const int u = tris_[t].nb[k];
  if (u < 0 || !tris_[u].alive) return false;

  const int a = tris_[t].v[k];
  const int p = tris_[t].v[(k + 1) % 3];
  const int q = tris_[t].v[(k + 2) % 3];
  if (is_constrained(p, q)) return false;

  int ku = -1;
  for (int s = 0; s < 3; ++s)
    if (tris_[u].nb[s] == t) ku = s;
  if (ku < 0) return false;
  const int d = tris_[u].v[ku];

  if (incircle(pts_[a], pts_[p], pts_[q], pts_[d]) <= 0) return false;
  // new triangles (a, p, d) and (a, d, q) must stay CCW
  if (orient2d(pts_[a], pts_[p], pts_[d]) <= 0) return false;
  if (orient2d(pts_[a], pts_[d], pts_[q]) <= 0) return false;

  const int t_ap = tris_[t].nb[(k + 2) % 3];  // across (a, p)
  const int t_qa = tris_[t].nb[(k + 1) % 3];  // across (q, a)
  int u_dq = -1, u_pd = -1;                   // neighbors of u across (d,q) and (p,d)
  for (int s = 0; s < 3; ++s) {
    const int x = tris_[u].v[(s + 1) % 3], y = tris_[u].v[(s + 2) % 3];
    if (std::minmax(x, y) == std::minmax(d, q)) u_dq = tris_[u].nb[s];
    if (std::minmax(x, y) == std::minmax(p, d)) u_pd = tris_[u].nb[s];
  }

  tris_[t].v = {a, p, d};
  tris_[t].nb = {u_pd, u, t_ap};  // opposite a: (p,d); opposite p: (d,a)->u; opposite d: (a,p)
  tris_[u].v = {a, d, q};
  tris_[u].nb = {u_dq, t_qa, t};  // opposite a: (d,q); opposite d: (q,a); opposite q: (a,d)

  patch_neighbor(u_pd, u, t);
  patch_neighbor(t_qa, t, u);

  push_edges(t);
  push_edges(u);
  return true;
}

void Triangulator::lawson_flips() {
  // bounded sweep; a valid CDT is reached long before the cap on sane input
  size_t budget = 64 + 32 * tris_.size() * 8;
  while (!flip_queue_.empty() && budget-- > 0) {
    auto [t, k] = flip_queue_.front();
    flip_queue_.pop_front();
    try_flip(t, k);
  }
  flip_queue_.clear();
}

bool Triangulator::circumcenter(int t, Vec2& out) const {
  const auto& v = tris_[t].v;
  const Vec2 a = pts_[v[0]];
  const Vec2 b = pts_[v[1]] - a;
  const Vec2 c = pts_[v[2]] - a;
  const double d = 2.0 * (b.x() * c.y() - b.y() * c.x());
  if (std::abs(d) < 1e-30) return false;
  const double bl = b.squaredNorm(), cl = c.squaredNorm();
  out = a + Vec2(c.y() * bl - b.y() * cl, b.x() * cl - c.x() * bl) / d;
  return out.allFinite();
}

int Triangulator::insert_in_triangle(const Vec2& p, int t, bool flips) {
  const int x = static_cast<int>(pts_.size());
  pts_.push_back(p);
  const auto [a, b, c] = tris_[t].v;
  const auto [na, nb, nc] = tris_[t].nb;

  tris_[t].alive = false;
  const int t0 = static_cast<int>(tris_.size());
  // children (a,b,x), (b,c,x), (c,a,x)
  tris_.push_back({{a, b, x}, {t0 + 1, t0 + 2, nc}, true});
  tris_.push_back({{b, c, x}, {t0 + 2, t0, na}, true});
  tris_.push_back({{c, a, x}, {t0, t0 + 1, nb}, true});
  patch_neighbor(nc, t, t0);
  patch_neighbor(na, t, t0 + 1);
  patch_neighbor(nb, t, t0 + 2);

  if (flips) {
    push_edges(t0);
    push_edges(t0 + 1);
    push_edges(t0 + 2);
    lawson_flips();
  }
  return x;
}

void Triangulator::refine(double max_area) {
  const double polygon_area = [&] {
    double acc = 0.0;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
      if (tris_[t].alive) acc += tri_area(t);
    return acc;
  }();

  const long insert_cap =
      64 + 24 * static_cast<long>(std::ceil(polygon_area / max_area)) + 8 * m_;
  long inserted = 0;
  long angle_budget = 2000 + 2 * m_;
  const double angle_area_floor = max_area / 16.0;
  const double vertex_tol = 1e-12 * std::sqrt(polygon_area);

  auto worst_oversized = [&]() {
    int best = -1;
    double best_area = max_area;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive) continue;
      const double area = tri_area(t);
      if (area > best_area) {
        best_area = area;
        best = t;
      }
    }
    return best;
  };

  auto near_existing_vertex = [&](const Vec2& p, int t) {
    for (int k = 0; k < 3; ++k)
      if ((pts_[tris_[t].v[k]] - p).norm() <= vertex_tol) return true;
    return false;
  };

  auto refine_once = [&](int t) {
    Vec2 cc;
    if (inserted <= insert_cap && circumcenter(t, cc)) {
      const int tc = find_strictly_containing(cc);
      if (tc >= 0 && !near_existing_vertex(cc, tc) && boundary_visible(centroid(t), cc)) {
        insert_in_triangle(cc, tc, true);
        ++inserted;
        return;
      }
    }
    insert_in_triangle(centroid(t), t, inserted <= insert_cap);
    ++inserted;
  };

  while (true) {
    const int t = worst_oversized();
    if (t >= 0) {
      refine_once(t);
      continue;
    }
    if (angle_budget <= 0) break;
    int bad = -1;
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
      if (!tris_[s].alive || tri_area(s) <= angle_area_floor) continue;
      if (min_angle_deg(s) < 20.0) {
        bad = s;
        break;
      }
    }
    if (bad < 0) break;
    refine_once(bad);
    --angle_budget;
  }
}

void Triangulator::run(double max_area) {
  ear_clip();
  link_adjacency();
  for (int t = 0; t < static_cast<int>(tris_.size()); ++t) push_edges(t);
  lawson_flips();
  refine(max_area);
}

PlanarSolidMesh Triangulator::finish() && {
  PlanarSolidMesh solid;
  solid.vertices = std::move(pts_);
  for (const auto& t : tris_)
    if (t.alive) solid.faces.push_back(t.v);
  solid.boundary_map.resize(m_);
  for (int i = 0; i < m_; ++i) solid.boundary_map[i] = i;

  solid.adjacency.assign(solid.vertices.size(), {});
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& f : solid.faces) {
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(f[k], f[(k + 1) % 3]);
      if (!seen.emplace(key, true).second) continue;
      solid.adjacency[key.first].push_back(key.second);
      solid.adjacency[key.second].push_back(key.first);
    }
  }
  for (auto& nbrs : solid.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return solid;
}

}  // namespace

PlanarSolidMesh tessellate_solid(const Curve2D& curve, double max_area) {
  require(max_area > 0, ErrorCode::InvalidArgument, "max_area must be positive");
  require(curve.size() >= 3, ErrorCode::DegenerateCurve, "curve has fewer than 3 points");
  Triangulator tess(curve);
  tess.run(max_area);
  return std::move(tess).finish();
}

}  // namespace curvematch
