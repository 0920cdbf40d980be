#include <doctest.h>

#include "curvematch/cost.hpp"
#include "curvematch/errors.hpp"
#include "support/oracles.hpp"

using namespace curvematch;

namespace {

FeatureField random_field(int rows, int d, int labels, std::uint64_t seed) {
  oracles::TestRng rng(seed);
  FeatureField f;
  f.hks.resize(rows, d);
  f.wks.resize(rows, d);
  f.labels.resize(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < d; ++j) {
      f.hks(i, j) = rng.uniform();
      f.wks(i, j) = rng.uniform();
    }
    f.labels[i] = rng.uniform_int(0, labels - 1);
  }
  return f;
}

}  // namespace

TEST_SUITE("cost") {

TEST_CASE("identical rows in the same segment cost zero") {
  Eigen::RowVectorXd h(3), w(3);
  h << 0.1, 0.5, 0.9;
  w << 0.2, 0.2, 0.7;
  CHECK(feature_distance(h, w, 2, h, w, 2, 1e3) == 0.0);
}

TEST_CASE("a single differing entry contributes its absolute difference") {
  Eigen::RowVectorXd h(4), w(4), h2(4);
  h << 0.1, 0.2, 0.3, 0.4;
  w << 0.0, 0.0, 0.0, 0.0;
  h2 = h;
  h2(2) += 0.5;
  CHECK(feature_distance(h, w, 0, h2, w, 0, 1e3) == doctest::Approx(0.5));
}

TEST_CASE("different segments gate to tau exactly") {
  Eigen::RowVectorXd h(2), w(2);
  h << 0.3, 0.4;
  w << 0.5, 0.6;
  CHECK(feature_distance(h, w, 0, h, w, 1, 1e3) == 1e3);
}

TEST_CASE("3x4 matrix matches element-wise recomputation") {
  const FeatureField fm = random_field(3, 5, 2, 11);
  const FeatureField fn = random_field(4, 5, 2, 12);
  const CostMatrix cost = build_cost_matrix(fm, fn, 1e3);
  REQUIRE(cost.rows() == 3);
  REQUIRE(cost.cols() == 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect =
          fm.labels[i] != fn.labels[j]
              ? 1e3
              : (fm.hks.row(i) - fn.hks.row(j)).cwiseAbs().sum() +
                    (fm.wks.row(i) - fn.wks.row(j)).cwiseAbs().sum();
      CHECK(cost.D(i, j) == expect);
    }
}

TEST_CASE("rows sampled from the target's own features give a zero ground-truth block") {
  const FeatureField fn = random_field(9, 6, 2, 13);
  const std::vector<int> picks{7, 2, 5, 0};
  FeatureField fm;
  fm.hks.resize(4, 6);
  fm.wks.resize(4, 6);
  fm.labels.resize(4);
  for (int i = 0; i < 4; ++i) {
    fm.hks.row(i) = fn.hks.row(picks[i]);
    fm.wks.row(i) = fn.wks.row(picks[i]);
    fm.labels[i] = fn.labels[picks[i]];
  }
  const CostMatrix cost = build_cost_matrix(fm, fn, 1e3);
  for (int i = 0; i < 4; ++i) CHECK(cost.D(i, picks[i]) == 0.0);
}

TEST_CASE("fully disjoint segments give a constant tau matrix") {
  FeatureField fm = random_field(3, 4, 1, 61);
  FeatureField fn = random_field(5, 4, 1, 62);
  std::fill(fm.labels.begin(), fm.labels.end(), 0);
  std::fill(fn.labels.begin(), fn.labels.end(), 1);
  const CostMatrix cost = build_cost_matrix(fm, fn, 1e3);
  CHECK((cost.D.array() == 1e3).all());
}

TEST_CASE("entries stay within the gated bound") {
  const FeatureField fm = random_field(6, 10, 3, 21);
  const FeatureField fn = random_field(8, 10, 3, 22);
  const CostMatrix cost = build_cost_matrix(fm, fn, 1e3);
  const double bound = std::max(2.0 * 10, cost.tau);
  for (int i = 0; i < cost.rows(); ++i)
    for (int j = 0; j < cost.cols(); ++j) {
      CHECK(cost.D(i, j) >= 0.0);
      CHECK(cost.D(i, j) <= bound);
      if (fm.labels[i] != fn.labels[j]) CHECK(cost.D(i, j) == cost.tau);
    }
}

TEST_CASE("construction is permutation-equivariant") {
  const FeatureField fm = random_field(5, 4, 2, 31);
  const FeatureField fn = random_field(7, 4, 2, 32);
  const CostMatrix base = build_cost_matrix(fm, fn, 1e3);

  const std::vector<int> pi{4, 2, 0, 1, 3};
  const std::vector<int> pj{6, 0, 5, 1, 4, 2, 3};
  FeatureField fm2, fn2;
  fm2.hks.resize(5, 4); fm2.wks.resize(5, 4); fm2.labels.resize(5);
  fn2.hks.resize(7, 4); fn2.wks.resize(7, 4); fn2.labels.resize(7);
  for (int i = 0; i < 5; ++i) {
    fm2.hks.row(pi[i]) = fm.hks.row(i);
    fm2.wks.row(pi[i]) = fm.wks.row(i);
    fm2.labels[pi[i]] = fm.labels[i];
  }
  for (int j = 0; j < 7; ++j) {
    fn2.hks.row(pj[j]) = fn.hks.row(j);
    fn2.wks.row(pj[j]) = fn.wks.row(j);
    fn2.labels[pj[j]] = fn.labels[j];
  }
  const CostMatrix moved = build_cost_matrix(fm2, fn2, 1e3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 7; ++j) CHECK(moved.D(pi[i], pj[j]) == base.D(i, j));
}

TEST_CASE("tau must dominate the maximum descriptor distance") {
  const FeatureField fm = random_field(3, 100, 2, 41);
  const FeatureField fn = random_field(3, 100, 2, 42);
  CHECK_THROWS_AS(build_cost_matrix(fm, fn, 100.0), Error);  // 2d = 200 > tau
  CHECK_NOTHROW(build_cost_matrix(fm, fn, 1e3));
}

TEST_CASE("mismatched widths are rejected") {
  const FeatureField fm = random_field(3, 4, 2, 51);
  const FeatureField fn = random_field(3, 5, 2, 52);
  CHECK_THROWS_AS(build_cost_matrix(fm, fn, 1e3), Error);
  Eigen::RowVectorXd a(3), b(4);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(feature_distance(a, a, 0, b, b, 0, 1e3), Error);
}

}  // TEST_SUITE
