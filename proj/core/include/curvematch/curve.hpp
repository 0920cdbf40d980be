#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <vector>

namespace curvematch {

enum class CurveFormat { CsvPoints, Json };

// Closed planar polygon, the discretized query shape. Points are ordered
// counter-clockwise; the edge between the last and the first point is
// implicit.
struct Curve2D {
  std::vector<Eigen::Vector2d> points;

  int size() const { return static_cast<int>(points.size()); }
  double signed_area() const;
  double area() const;
  double perimeter() const;
  // Length of the edge from point i to point (i+1) mod m.
  double edge_length(int i) const;
};

// Validates raw points into a Curve2D: collapses consecutive duplicates
// (including a repeated closing point), requires a simple polygon and
// enforces counter-clockwise orientation.
Curve2D make_curve(std::vector<Eigen::Vector2d> points);

Curve2D load_curve(const std::filesystem::path& path, CurveFormat format);
Curve2D load_curve(const std::filesystem::path& path);  // format from extension

void save_curve(const Curve2D& curve, const std::filesystem::path& path, CurveFormat format);
void save_curve(const Curve2D& curve, const std::filesystem::path& path);

// Uniformly scaled copy (about the origin).
Curve2D scaled(const Curve2D& curve, double factor);

}  // namespace curvematch
