#include "curvematch/synthetic.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <map>

#include "curvematch/errors.hpp"

namespace curvematch::synthetic {

namespace {

// splitmix64; uniform doubles derived from raw bits so results do not depend
// on the standard library's distribution implementations
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

using V3 = Eigen::Vector3d;

// off-plane squash applied to every class shape
constexpr double kFlatness = 0.22;

std::vector<std::array<int, 3>> icosahedron_faces() {
  return {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10},  {0, 10, 11},
          {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6},  {7, 1, 8},
          {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},   {3, 8, 9},
          {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},   {9, 8, 1}};
}

std::vector<V3> icosahedron_vertices() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<V3> v = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
                       {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
                       {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  return v;
}

}  // namespace

double class_radius(int class_id, const Eigen::Vector3d& u) {
  switch (class_id) {
    case 0: {  // smooth ellipsoid, semi-axes (1.0, 0.78, 0.62)
      const V3 inv(1.0 / 1.0, 1.0 / 0.78, 1.0 / 0.62);
      return 1.0 / (u.cwiseProduct(inv)).norm();
    }
    case 1:  // deep-waisted two-lobe body along z
      return 0.30 + 0.80 * u.z() * u.z();
    case 2: {  // five fingers in the xz-plane: Re((z + ix)^5)
      const double z = u.z(), x = u.x();
      const double re5 =
          z * z * z * z * z - 10.0 * z * z * z * x * x + 5.0 * z * x * x * x * x;
      return 0.66 + 0.30 * re5;
    }
    default:
      fail(ErrorCode::InvalidArgument, "unknown shape class " + std::to_string(class_id));
  }
}

TriMesh tetrahedron() {
  const double s = 1.0 / (2.0 * std::sqrt(2.0));
  std::vector<V3> v = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  std::vector<std::array<int, 3>> f = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return make_mesh(std::move(v), std::move(f));
}

TriMesh icosahedron() {
  return make_mesh(icosahedron_vertices(), icosahedron_faces());
}

TriMesh icosphere(int subdivisions) {
  require(subdivisions >= 0 && subdivisions <= 6, ErrorCode::InvalidArgument,
          "subdivisions must be in [0, 6]");
  std::vector<V3> verts = icosahedron_vertices();
  std::vector<std::array<int, 3>> faces = icosahedron_faces();
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(verts.size());
      verts.push_back((verts[a] + verts[b]).normalized());
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return make_mesh(std::move(verts), std::move(faces));
}

TriMesh uv_sphere(int rings, int segments) {
  require(rings >= 1 && segments >= 3, ErrorCode::InvalidArgument,
          "need rings >= 1 and segments >= 3");
  std::vector<V3> verts;
  verts.reserve(static_cast<size_t>(rings) * segments + 2);
  verts.emplace_back(0, 0, 1);  // north pole = 0
  for (int r = 0; r < rings; ++r) {
    const double phi = M_PI * (r + 1) / (rings + 1);
    for (int s = 0; s < segments; ++s) {
      const double theta = 2.0 * M_PI * s / segments;
      verts.emplace_back(std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta),
                         std::cos(phi));
    }
  }
  verts.emplace_back(0, 0, -1);  // south pole
  const int south = static_cast<int>(verts.size()) - 1;
  auto at = [&](int r, int s) { return 1 + r * segments + (s % segments); };

  std::vector<std::array<int, 3>> faces;
  for (int s = 0; s < segments; ++s) faces.push_back({0, at(0, s), at(0, s + 1)});
  for (int r = 0; r + 1 < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      faces.push_back({at(r, s), at(r + 1, s), at(r + 1, s + 1)});
      faces.push_back({at(r, s), at(r + 1, s + 1), at(r, s + 1)});
    }
  }
  for (int s = 0; s < segments; ++s) faces.push_back({south, at(rings - 1, s + 1), at(rings - 1, s)});
  return make_mesh(std::move(verts), std::move(faces));
}

TriMesh cylinder_grid(int rows, int cols, double radius, double spacing) {
  require(rows >= 2 && cols >= 3, ErrorCode::InvalidArgument, "need rows >= 2 and cols >= 3");
  std::vector<V3> verts;
  verts.reserve(static_cast<size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double theta = 2.0 * M_PI * c / cols;
      verts.emplace_back(radius * std::cos(theta), radius * std::sin(theta), spacing * r);
    }
  }
  auto at = [&](int r, int c) { return r * cols + (c % cols); };
  std::vector<std::array<int, 3>> faces;
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      faces.push_back({at(r, c), at(r, c + 1), at(r + 1, c)});
      faces.push_back({at(r, c + 1), at(r + 1, c + 1), at(r + 1, c)});
    }
  }
  return make_mesh(std::move(verts), std::move(faces));
}

TriMesh class_shape(int class_id, int instance, int subdivisions, std::uint64_t seed) {
  TriMesh sphere = icosphere(subdivisions);
  std::vector<V3> verts = sphere.vertices;

  double a[5] = {0, 0, 0, 0, 0};
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  if (instance >= 0) {
    Rng rng(seed * 0x9e3779b9ull + static_cast<std::uint64_t>(class_id) * 1000003ull +
            static_cast<std::uint64_t>(instance) * 7919ull + 17ull);
    for (double& c : a) c = rng.uniform(-0.05, 0.05);
    V3 axis(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (axis.norm() < 1e-6) axis = V3(0, 0, 1);
    rot = Eigen::AngleAxisd(rng.uniform(0, 2.0 * M_PI), axis.normalized()).toRotationMatrix();
  }

  for (auto& p : verts) {
    const V3 u = p.normalized();
    // low-order harmonic wobble keeps the deformation smooth and class-preserving
    const double wobble = 1.0 + a[0] * u.x() * u.y() + a[1] * (u.x() * u.x() - u.y() * u.y()) +
                          a[2] * u.y() * u.z() + a[3] * (3.0 * u.z() * u.z() - 1.0) / 4.0 +
                          a[4] * u.x() * u.z();
    V3 q = class_radius(class_id, u) * wobble * u;
    // flatten across the section plane so each half of the surface is a
    // near-isometric copy of the y = 0 cross-section solid
    q.y() *= kFlatness;
    p = rot * q;
  }
  return make_mesh(std::move(verts), sphere.faces);
}

Curve2D class_query(int class_id, int points) {
  require(points >= 8, ErrorCode::InvalidArgument, "need at least 8 query points");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double alpha = 2.0 * M_PI * i / points;
    const V3 u(std::sin(alpha), 0.0, std::cos(alpha));
    const double r = class_radius(class_id, u);
    pts.emplace_back(r * u.x(), r * u.z());
  }
  return make_curve(std::move(pts));
}

RetrievalFixture retrieval_fixture(int classes, int per_class, int subdivisions,
                                   int query_points, std::uint64_t seed) {
  require(classes >= 1 && classes <= 3, ErrorCode::InvalidArgument,
          "fixture supports up to 3 classes");
  RetrievalFixture fixture;
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      fixture.targets.push_back(class_shape(c, i, subdivisions, seed));
      fixture.target_classes.push_back(c);
      fixture.target_names.push_back("class" + std::to_string(c) + "_target" + std::to_string(i));
    }
    fixture.queries.push_back(class_query(c, query_points));
    fixture.query_classes.push_back(c);
  }
  return fixture;
}

}  // namespace curvematch::synthetic
