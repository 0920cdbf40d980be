#include "curvematch/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvematch/errors.hpp"
#include "predicates.hpp"
#include "text_io.hpp"

namespace curvematch {

double Curve2D::signed_area() const {
  const int m = size();
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& a = points[i];
    const auto& b = points[(i + 1) % m];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * acc;
}

double Curve2D::area() const { return std::abs(signed_area()); }

double Curve2D::perimeter() const {
  double acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += edge_length(i);
  return acc;
}

double Curve2D::edge_length(int i) const {
  return (points[(i + 1) % size()] - points[i]).norm();
}

namespace {

double bbox_diagonal(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

void check_simple(const std::vector<Eigen::Vector2d>& pts) {
  const int m = static_cast<int>(pts.size());
  for (int i = 0; i < m; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % m];
    for (int j = i + 1; j < m; ++j) {
      const auto& c = pts[j];
      const auto& d = pts[(j + 1) % m];
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      if (adjacent) {
        // Segments share one endpoint; a fold-back onto the neighbor is the
        // only way they can overlap.
        if (j == i + 1) {
          if (detail::on_segment(a, b, d) || detail::on_segment(c, d, a))
            fail(ErrorCode::SelfIntersecting,
                 "consecutive edges overlap near point " + std::to_string(j));
        } else {  // closing edge (m-1, 0) against edge (0, 1)
          if (detail::on_segment(c, d, b) || detail::on_segment(a, b, c))
            fail(ErrorCode::SelfIntersecting, "closing edge overlaps first edge");
        }
        continue;
      }
      if (detail::segments_intersect(a, b, c, d))
        fail(ErrorCode::SelfIntersecting,
             "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
  }
}

}  // namespace

Curve2D make_curve(std::vector<Eigen::Vector2d> points) {
  require(points.size() >= 3, ErrorCode::DegenerateCurve,
          "curve needs at least 3 points, got " + std::to_string(points.size()));
  const double tol = 1e-12 * std::max(bbox_diagonal(points), 1e-300);

  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (!pts.empty() && (p - pts.back()).norm() <= tol) continue;
    pts.push_back(p);
  }
  while (pts.size() >= 2 && (pts.front() - pts.back()).norm() <= tol) pts.pop_back();

  require(pts.size() >= 3, ErrorCode::DegenerateCurve,
          "fewer than 3 distinct points after collapsing duplicates");

  check_simple(pts);

  Curve2D curve{std::move(pts)};
  const double signed_area = curve.signed_area();
  require(std::abs(signed_area) > tol * tol, ErrorCode::DegenerateCurve,
          "polygon has zero area");
  if (signed_area < 0) std::reverse(curve.points.begin(), curve.points.end());
  return curve;
}

namespace {

CurveFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return CurveFormat::CsvPoints;
  if (ext == ".json") return CurveFormat::Json;
  fail(ErrorCode::InvalidArgument, "cannot infer curve format from '" + path.string() + "'");
}

std::vector<Eigen::Vector2d> parse_csv_points(std::istream& in, const std::string& name) {
  std::vector<Eigen::Vector2d> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty() || sv.front() == '#') continue;
    const auto comma = sv.find(',');
    require(comma != std::string_view::npos, ErrorCode::ParseError,
            name + ":" + std::to_string(lineno) + ": expected 'x,y'");
    double x = 0, y = 0;
    require(detail::parse_double(sv.substr(0, comma), x) &&
                detail::parse_double(sv.substr(comma + 1), y),
            ErrorCode::ParseError,
            name + ":" + std::to_string(lineno) + ": bad number");
    pts.emplace_back(x, y);
  }
  return pts;
}

std::vector<Eigen::Vector2d> parse_json_points(std::istream& in, const std::string& name) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, name + ": " + e.what());
  }
  require(doc.is_array(), ErrorCode::ParseError, name + ": expected a JSON array of [x,y]");
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(doc.size());
  for (const auto& item : doc) {
    require(item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number(),
            ErrorCode::ParseError, name + ": each entry must be [x,y]");
    pts.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return pts;
}

}  // namespace

Curve2D load_curve(const std::filesystem::path& path, CurveFormat format) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open '" + path.string() + "'");
  auto pts = format == CurveFormat::CsvPoints ? parse_csv_points(in, path.string())
                                              : parse_json_points(in, path.string());
  return make_curve(std::move(pts));
}

Curve2D load_curve(const std::filesystem::path& path) {
  return load_curve(path, format_from_extension(path));
}

void save_curve(const Curve2D& curve, const std::filesystem::path& path, CurveFormat format) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::IoError, "cannot write '" + path.string() + "'");
  if (format == CurveFormat::CsvPoints) {
    for (const auto& p : curve.points)
      out << detail::format_double(p.x()) << ',' << detail::format_double(p.y()) << '\n';
  } else {
    out << '[';
    for (size_t i = 0; i < curve.points.size(); ++i) {
      if (i) out << ',';
      out << '[' << detail::format_double(curve.points[i].x()) << ','
          << detail::format_double(curve.points[i].y()) << ']';
    }
    out << "]\n";
  }
  require(out.good(), ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

void save_curve(const Curve2D& curve, const std::filesystem::path& path) {
  save_curve(curve, path, format_from_extension(path));
}

Curve2D scaled(const Curve2D& curve, double factor) {
  Curve2D out = curve;
  for (auto& p : out.points) p *= factor;
  return out;
}

}  // namespace curvematch
