#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <vector>

namespace curvematch {

enum class MeshFormat { Off, Obj };

// Connected, edge-manifold triangle mesh: the discretized 3D target shape.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 2>> edges;     // undirected, smaller index first
  std::vector<std::vector<int>> adjacency;   // sorted neighbor lists

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  double face_area(int f) const;
  double total_area() const;
  double bbox_diagonal() const;
};

// Builds connectivity from raw vertices/faces. Drops zero-area faces (count
// reported through dropped_faces when given), then validates edge-manifoldness
// and connectivity.
TriMesh make_mesh(std::vector<Eigen::Vector3d> vertices,
                  std::vector<std::array<int, 3>> faces,
                  int* dropped_faces = nullptr);

TriMesh load_mesh(const std::filesystem::path& path, MeshFormat format,
                  int* dropped_faces = nullptr);
TriMesh load_mesh(const std::filesystem::path& path, int* dropped_faces = nullptr);

// Uniformly scaled copy (about the origin).
TriMesh scaled(const TriMesh& mesh, double factor);

}  // namespace curvematch
