#include "curvematch/mesh.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "curvematch/errors.hpp"
#include "text_io.hpp"

namespace curvematch {

double TriMesh::face_area(int f) const {
  const auto& t = faces[f];
  const Eigen::Vector3d u = vertices[t[1]] - vertices[t[0]];
  const Eigen::Vector3d v = vertices[t[2]] - vertices[t[0]];
  return 0.5 * u.cross(v).norm();
}

double TriMesh::total_area() const {
  double acc = 0.0;
  for (int f = 0; f < face_count(); ++f) acc += face_area(f);
  return acc;
}

double TriMesh::bbox_diagonal() const {
  if (vertices.empty()) return 0.0;
  Eigen::Vector3d lo = vertices.front(), hi = vertices.front();
  for (const auto& p : vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

TriMesh make_mesh(std::vector<Eigen::Vector3d> vertices,
                  std::vector<std::array<int, 3>> faces,
                  int* dropped_faces) {
  require(vertices.size() >= 3, ErrorCode::ParseError, "mesh needs at least 3 vertices");
  const int n = static_cast<int>(vertices.size());
  for (const auto& f : faces)
    for (int idx : f)
      require(idx >= 0 && idx < n, ErrorCode::ParseError,
              "face index " + std::to_string(idx) + " out of range (n=" + std::to_string(n) + ")");

  TriMesh mesh;
  mesh.vertices = std::move(vertices);

  // Drop degenerate faces: repeated indices or (numerically) zero area.
  Eigen::Vector3d lo = mesh.vertices.front(), hi = mesh.vertices.front();
  for (const auto& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double area_tol = 1e-14 * (hi - lo).squaredNorm();
  int dropped = 0;
  mesh.faces.reserve(faces.size());
  for (const auto& f : faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      ++dropped;
      continue;
    }
    const Eigen::Vector3d u = mesh.vertices[f[1]] - mesh.vertices[f[0]];
    const Eigen::Vector3d v = mesh.vertices[f[2]] - mesh.vertices[f[0]];
    if (0.5 * u.cross(v).norm() <= area_tol) {
      ++dropped;
      continue;
    }
    mesh.faces.push_back(f);
  }
  if (dropped_faces) *dropped_faces = dropped;
  require(!mesh.faces.empty(), ErrorCode::ParseError, "mesh has no non-degenerate faces");

  std::map<std::array<int, 2>, int> edge_faces;
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      int a = f[e], b = f[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_faces[{a, b}];
    }
  }
  mesh.edges.reserve(edge_faces.size());
  mesh.adjacency.assign(n, {});
  for (const auto& [edge, count] : edge_faces) {
    require(count <= 2, ErrorCode::NonManifold,
            "edge (" + std::to_string(edge[0]) + "," + std::to_string(edge[1]) + ") belongs to " +
                std::to_string(count) + " faces");
    mesh.edges.push_back(edge);
    mesh.adjacency[edge[0]].push_back(edge[1]);
    mesh.adjacency[edge[1]].push_back(edge[0]);
  }
  for (auto& nbrs : mesh.adjacency) std::sort(nbrs.begin(), nbrs.end());

  // Connectivity over the vertex graph; isolated vertices count as disconnected.
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : mesh.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  require(reached == n, ErrorCode::Disconnected,
          "mesh is not connected (" + std::to_string(reached) + " of " + std::to_string(n) +
              " vertices reachable)");
  return mesh;
}

namespace {

MeshFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".off") return MeshFormat::Off;
  if (ext == ".obj") return MeshFormat::Obj;
  fail(ErrorCode::InvalidArgument, "cannot infer mesh format from '" + path.string() + "'");
}

void fan_triangulate(const std::vector<int>& poly, std::vector<std::array<int, 3>>& faces,
                     const std::string& name) {
  require(poly.size() >= 3, ErrorCode::ParseError, name + ": face with fewer than 3 vertices");
  for (size_t i = 1; i + 1 < poly.size(); ++i)
    faces.push_back({poly[0], poly[i], poly[i + 1]});
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

TriMesh load_off(std::istream& in, const std::string& name, int* dropped) {
  auto next_data_line = [&](std::string& line) -> bool {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };

  std::string line;
  require(next_data_line(line), ErrorCode::ParseError, name + ": empty file");
  auto toks = split_ws(line);
  require(!toks.empty() && toks[0] == "OFF", ErrorCode::ParseError, name + ": missing OFF header");

  long nv = -1, nf = -1, ne = -1;
  if (toks.size() >= 4) {
    nv = std::stol(toks[1]);
    nf = std::stol(toks[2]);
    ne = std::stol(toks[3]);
  } else {
    require(next_data_line(line), ErrorCode::ParseError, name + ": truncated header");
    toks = split_ws(line);
    require(toks.size() >= 3, ErrorCode::ParseError, name + ": bad count line");
    nv = std::stol(toks[0]);
    nf = std::stol(toks[1]);
    ne = std::stol(toks[2]);
  }
  (void)ne;
  require(nv >= 3 && nf >= 1, ErrorCode::ParseError, name + ": implausible counts");

  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    require(next_data_line(line), ErrorCode::ParseError, name + ": truncated vertex list");
    toks = split_ws(line);
    require(toks.size() >= 3, ErrorCode::ParseError, name + ": vertex line needs 3 coordinates");
    double x, y, z;
    require(detail::parse_double(toks[0], x) && detail::parse_double(toks[1], y) &&
                detail::parse_double(toks[2], z),
            ErrorCode::ParseError, name + ": bad vertex coordinate");
    vertices.emplace_back(x, y, z);
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    require(next_data_line(line), ErrorCode::ParseError, name + ": truncated face list");
    toks = split_ws(line);
    require(!toks.empty(), ErrorCode::ParseError, name + ": empty face line");
    const int cnt = std::stoi(toks[0]);
    require(cnt >= 3 && static_cast<size_t>(cnt) + 1 <= toks.size(), ErrorCode::ParseError,
            name + ": bad face vertex count");
    std::vector<int> poly(cnt);
    for (int k = 0; k < cnt; ++k) poly[k] = std::stoi(toks[k + 1]);
    fan_triangulate(poly, faces, name);
  }
  return make_mesh(std::move(vertices), std::move(faces), dropped);
}

TriMesh load_obj(std::istream& in, const std::string& name, int* dropped) {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] == "v") {
      require(toks.size() >= 4, ErrorCode::ParseError,
              name + ":" + std::to_string(lineno) + ": vertex needs 3 coordinates");
      double x, y, z;
      require(detail::parse_double(toks[1], x) && detail::parse_double(toks[2], y) &&
                  detail::parse_double(toks[3], z),
              ErrorCode::ParseError, name + ":" + std::to_string(lineno) + ": bad coordinate");
      vertices.emplace_back(x, y, z);
    } else if (toks[0] == "f") {
      std::vector<int> poly;
      for (size_t k = 1; k < toks.size(); ++k) {
        std::string head = toks[k].substr(0, toks[k].find('/'));
        require(!head.empty(), ErrorCode::ParseError,
                name + ":" + std::to_string(lineno) + ": bad face token '" + toks[k] + "'");
        long idx = std::stol(head);
        if (idx < 0) idx = static_cast<long>(vertices.size()) + idx;  // relative
        else idx -= 1;                                                // 1-based
        poly.push_back(static_cast<int>(idx));
      }
      fan_triangulate(poly, faces, name + ":" + std::to_string(lineno));
    }
    // vn/vt/o/g/s/usemtl/mtllib ignored
  }
  return make_mesh(std::move(vertices), std::move(faces), dropped);
}

}  // namespace

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format, int* dropped_faces) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  try {
    return format == MeshFormat::Off ? load_off(in, path.string(), dropped_faces)
                                     : load_obj(in, path.string(), dropped_faces);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, path.string() + ": malformed number");
  } catch (const std::out_of_range&) {
    fail(ErrorCode::ParseError, path.string() + ": number out of range");
  }
}

TriMesh load_mesh(const std::filesystem::path& path, int* dropped_faces) {
  return load_mesh(path, format_from_extension(path), dropped_faces);
}

TriMesh scaled(const TriMesh& mesh, double factor) {
  TriMesh out = mesh;
  for (auto& p : out.vertices) p *= factor;
  return out;
}

}  // namespace curvematch
