#include <doctest.h>

#include "curvematch/assignment.hpp"
#include "curvematch/errors.hpp"
#include "support/oracles.hpp"

using namespace curvematch;

TEST_SUITE("assignment") {

TEST_CASE("identity-favoring matrix picks the identity") {
  Eigen::MatrixXd cost = Eigen::MatrixXd::Ones(4, 4);
  cost.diagonal().setZero();
  const RegionAssignment a = hungarian(cost);
  CHECK(a.cost == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(a.perm[i] == i);
}

TEST_CASE("worked 3x3 example") {
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const RegionAssignment a = hungarian(cost);
  CHECK(a.cost == 5.0);  // brute force over 3! permutations
  CHECK(a.perm == std::vector<int>{1, 0, 2});
}

TEST_CASE("row permutation recovers the inverse permutation") {
  oracles::TestRng rng(5);
  const int r = 6;
  Eigen::MatrixXd base(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) base(i, j) = (i == j) ? 0.0 : 1.0 + rng.uniform();
  const std::vector<int> shuffle{3, 0, 5, 1, 4, 2};
  Eigen::MatrixXd permuted(r, r);
  for (int i = 0; i < r; ++i) permuted.row(i) = base.row(shuffle[i]);
  const RegionAssignment a = hungarian(permuted);
  CHECK(a.cost == 0.0);
  for (int i = 0; i < r; ++i) CHECK(a.perm[i] == shuffle[i]);
}

TEST_CASE("matches permutation brute force exactly for r <= 7") {
  // dyadic-rational entries keep every partial sum exact, so the comparison
  // is meaningful at bitwise equality
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    oracles::TestRng rng(seed);
    const int r = 2 + static_cast<int>(seed % 6);
    Eigen::MatrixXd cost(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) cost(i, j) = rng.uniform_int(0, 4096) / 64.0;
    const RegionAssignment a = hungarian(cost);
    CHECK(a.cost == oracles::brute_force_assignment(cost));
  }
}

TEST_CASE("ties resolve to the lexicographically smallest permutation") {
  const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(5, 5);
  const RegionAssignment a = hungarian(zeros);
  for (int i = 0; i < 5; ++i) CHECK(a.perm[i] == i);

  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(2, 2);  // both permutations cost 2
  two << 1, 1, 1, 1;
  const RegionAssignment b = hungarian(two);
  CHECK(b.perm == std::vector<int>{0, 1});
}

TEST_CASE("assign_regions on identical signatures is the identity") {
  oracles::TestRng rng(9);
  Eigen::MatrixXd sig(4, 10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 10; ++j) sig(i, j) = rng.uniform();
  const RegionAssignment a = assign_regions(sig, sig);
  CHECK(a.cost == 0.0);
  for (int i = 0; i < 4; ++i) CHECK(a.perm[i] == i);
}

TEST_CASE("assign_regions recovers a row permutation") {
  oracles::TestRng rng(10);
  Eigen::MatrixXd sig(5, 8);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 8; ++j) sig(i, j) = rng.uniform();
  const std::vector<int> shuffle{2, 4, 0, 1, 3};
  Eigen::MatrixXd moved(5, 8);
  for (int i = 0; i < 5; ++i) moved.row(shuffle[i]) = sig.row(i);
  // sig2d row i corresponds to moved row shuffle[i]
  const RegionAssignment a = assign_regions(sig, moved);
  CHECK(a.cost == doctest::Approx(0.0));
  for (int i = 0; i < 5; ++i) CHECK(a.perm[i] == shuffle[i]);
}

TEST_CASE("assign_regions cost is the brute-force minimum") {
  for (std::uint64_t seed : {3ull, 14ull, 15ull}) {
    oracles::TestRng rng(seed);
    Eigen::MatrixXd a(5, 200), b(5, 200);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 200; ++j) {
        a(i, j) = rng.uniform();
        b(i, j) = rng.uniform();
      }
    Eigen::MatrixXd cost(5, 5);
    for (int x = 0; x < 5; ++x)
      for (int y = 0; y < 5; ++y) cost(x, y) = (a.row(x) - b.row(y)).cwiseAbs().sum();
    CHECK(assign_regions(a, b).cost == doctest::Approx(oracles::brute_force_assignment(cost)));
  }
}

TEST_CASE("relabel maps through the permutation") {
  RegionAssignment a;
  a.perm = {2, 0, 1};
  CHECK(relabel({0, 1, 2, 1}, a) == std::vector<int>{2, 0, 1, 0});
}

TEST_CASE("invalid matrices are rejected") {
  CHECK_THROWS_AS(hungarian(Eigen::MatrixXd::Zero(2, 3)), Error);
  Eigen::MatrixXd nan2 = Eigen::MatrixXd::Zero(2, 2);
  nan2(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hungarian(nan2), Error);
}

}  // TEST_SUITE
