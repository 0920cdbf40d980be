#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "curvematch/curve.hpp"
#include "curvematch/errors.hpp"
#include "support/oracles.hpp"

using namespace curvematch;
namespace fs = std::filesystem;

namespace {

std::vector<Eigen::Vector2d> square_ccw() {
  return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("curvematch_test_" + name);
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("unit square stays as given") {
  const Curve2D c = make_curve(square_ccw());
  CHECK(c.size() == 4);
  CHECK(c.signed_area() == doctest::Approx(1.0));
  CHECK(c.points[0] == Eigen::Vector2d(0, 0));
  CHECK(c.points[1] == Eigen::Vector2d(1, 0));
}

TEST_CASE("clockwise square is reversed to CCW") {
  auto pts = square_ccw();
  std::reverse(pts.begin(), pts.end());
  const Curve2D c = make_curve(pts);
  CHECK(c.size() == 4);
  CHECK(c.signed_area() > 0);
  // plain reversal of the CW list
  CHECK(c.points[0] == Eigen::Vector2d(0, 0));
  CHECK(c.points[1] == Eigen::Vector2d(1, 0));
}

TEST_CASE("figure-eight polygon is rejected") {
  std::vector<Eigen::Vector2d> pts{{0, 0}, {2, 2}, {2, 0}, {0, 2}};
  CHECK_THROWS_WITH_AS(make_curve(pts), doctest::Contains("intersect"), Error);
  try {
    make_curve(pts);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfIntersecting);
  }
}

TEST_CASE("consecutive duplicates collapse, including the closing point") {
  std::vector<Eigen::Vector2d> pts{{0, 0}, {0, 0}, {1, 0}, {1, 1}, {1, 1}, {0, 1}, {0, 0}};
  const Curve2D c = make_curve(pts);
  CHECK(c.size() == 4);
}

TEST_CASE("fewer than 3 distinct points is degenerate") {
  std::vector<Eigen::Vector2d> pts{{0, 0}, {0, 0}, {1, 1}, {1, 1}};
  try {
    make_curve(pts);
    FAIL("expected DegenerateCurve");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateCurve);
  }
}

TEST_CASE("touching vertex is self-intersecting") {
  // bow tie pinched at the origin
  std::vector<Eigen::Vector2d> pts{{0, 0}, {1, 1}, {1, -1}, {0, 0}, {-1, 1}, {-1, -1}};
  CHECK_THROWS_AS(make_curve(pts), Error);
}

TEST_CASE("csv and json loaders round-trip the writer") {
  oracles::TestRng rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const int m = 3 + rng.uniform_int(0, 37);
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i < m; ++i) {
      const double a = 2.0 * M_PI * i / m;
      const double r = 0.5 + rng.uniform();
      pts.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    const Curve2D curve = make_curve(pts);  // star polygon, always simple

    for (auto format : {CurveFormat::Json, CurveFormat::CsvPoints}) {
      const auto path = temp_file(format == CurveFormat::Json ? "roundtrip.json" : "roundtrip.csv");
      save_curve(curve, path, format);
      const Curve2D back = load_curve(path, format);
      REQUIRE(back.size() == curve.size());
      for (int i = 0; i < curve.size(); ++i) {
        CHECK(back.points[i].x() == curve.points[i].x());  // bit-exact
        CHECK(back.points[i].y() == curve.points[i].y());
      }
      fs::remove(path);
    }
  }
}

TEST_CASE("csv parse errors carry line information") {
  const auto path = temp_file("bad.csv");
  std::ofstream(path) << "0,0\n1,oops\n";
  try {
    load_curve(path, CurveFormat::CsvPoints);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  fs::remove(path);
}

TEST_CASE("missing file raises IoError") {
  try {
    load_curve("/nonexistent/nope.csv", CurveFormat::CsvPoints);
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("perimeter and edge lengths agree") {
  const Curve2D c = make_curve(square_ccw());
  CHECK(c.perimeter() == doctest::Approx(4.0));
  for (int i = 0; i < 4; ++i) CHECK(c.edge_length(i) == doctest::Approx(1.0));
}

}  // TEST_SUITE
