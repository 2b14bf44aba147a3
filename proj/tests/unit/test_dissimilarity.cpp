#include <cmath>

#include <gtest/gtest.h>

#include "fans/dissimilarity.hpp"
#include "fans/graphon.hpp"
#include "oracles.hpp"

using namespace fans;

namespace {

AdjacencyMatrix cycle4() {
  const std::pair<Index, Index> edges[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return AdjacencyMatrix::from_edges(4, edges);
}

AdjacencyMatrix random_adjacency(Index n, std::uint64_t seed, double density = 0.4) {
  Rng rng(seed);
  return AdjacencyMatrix(oracle::random_graph(n, density, rng));
}

}  // namespace

TEST(D0Hat, IdenticalRowsWithoutTies) {
  // nodes 0 and 1 share neighbors {2, 3}
  const std::pair<Index, Index> edges[] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {3, 4}};
  const auto a = AdjacencyMatrix::from_edges(5, edges);
  EXPECT_EQ(d0_hat(a, {false, 0})(0, 1), 0.0);
  const double tied = d0_hat(a, {true, 99})(0, 1);
  EXPECT_GT(tied, 0.0);
  EXPECT_LE(tied, 1.0 / 25.0);
}

TEST(D0Hat, FourCycle) {
  const auto d = d0_hat(cycle4(), {false, 0});
  // k = 2 gives |<A_0 - A_1, A_2>| = 2, so the entry is 2 / 4
  EXPECT_EQ(d(0, 1), 0.5);
  EXPECT_EQ(d(0, 2), 0.0);  // opposite corners share both neighbors
  EXPECT_EQ(d.matrix(), oracle::d0(cycle4().matrix(), false, 0));
}

TEST(D0Hat, MatchesOracleWithTies) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_adjacency(7, s);
    EXPECT_EQ(d0_hat(a, {true, s}).matrix(), oracle::d0(a.matrix(), true, s));
    EXPECT_EQ(d0_hat(a, {false, s}).matrix(), oracle::d0(a.matrix(), false, s));
  }
}

TEST(D0Hat, SymmetricZeroDiagonal) {
  const auto d = d0_hat(random_adjacency(30, 4), {true, 8});
  EXPECT_EQ(d.matrix(), d.matrix().transpose());
  EXPECT_EQ(d.matrix().diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GE(d.matrix().minCoeff(), 0.0);
}

TEST(D0Hat, TieBreakKeepsStrictOrder) {
  const auto a = random_adjacency(40, 12, 0.3);
  const Matrix plain = d0_hat(a, {false, 0}).matrix();
  const Matrix tied = d0_hat(a, {true, 5}).matrix();
  for (Index i = 0; i < 40; ++i)
    for (Index j = 0; j < 40; ++j)
      for (Index k = 0; k < 40; ++k) {
        if (j == i || k == i) continue;
        if (plain(i, j) < plain(i, k)) ASSERT_LT(tied(i, j), tied(i, k));
      }
}

TEST(D0Hat, TieOffsetPerUnorderedPair) {
  EXPECT_EQ(tie_offset(3, 2, 9), tie_offset(3, 9, 2));
  EXPECT_NE(tie_offset(3, 2, 9), tie_offset(4, 2, 9));
  EXPECT_GT(tie_offset(3, 2, 9), 0.0);
  EXPECT_LT(tie_offset(3, 2, 9), 1.0);
}

TEST(D0Hat, DegenerateGraphs) {
  EXPECT_EQ(d0_hat(AdjacencyMatrix(Matrix::Zero(5, 5)), {false, 0}).matrix(), Matrix::Zero(5, 5));
  Matrix full = Matrix::Ones(5, 5);
  full.diagonal().setZero();
  // rows differ only at the two excluded coordinates, so |<A_i - A_j, A_k>| = 0 for k != i, j
  EXPECT_EQ(d0_hat(AdjacencyMatrix(full), {false, 0}).matrix(), Matrix::Zero(5, 5));
  EXPECT_THROW(d0_hat(AdjacencyMatrix(Matrix::Zero(2, 2)), {false, 0}), ArgumentError);
}

TEST(SHat, ThreeNodeExample) {
  Matrix x(3, 1);
  x << 0, 1, 2;
  EXPECT_EQ(s_hat(FeatureMatrix(x))(0, 1), 2.0);
}

TEST(SHat, EqualRowsGiveZero) {
  Matrix x(4, 2);
  x << 0.3, -1.2, 0.7, 2.5, 0.3, -1.2, 4.0, 0.1;
  EXPECT_EQ(s_hat(FeatureMatrix(x))(0, 2), 0.0);
}

TEST(SHat, ScalesQuadratically) {
  Rng rng(1);
  Matrix x(12, 3);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const Matrix base = s_hat(FeatureMatrix(x)).matrix();
  const Matrix scaled = s_hat(FeatureMatrix(2.0 * x)).matrix();
  EXPECT_LE((scaled - 4.0 * base).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SHat, MatchesOracle) {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    Matrix x(9, 1 + t % 4);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    const Matrix got = s_hat(FeatureMatrix(x)).matrix();
    const Matrix want = oracle::s(x);
    EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(s_hat(FeatureMatrix(Matrix::Zero(2, 1))), ArgumentError);
}

TEST(Combine, Arithmetic) {
  Matrix d = Matrix::Zero(3, 3), s = Matrix::Zero(3, 3);
  d(0, 1) = d(1, 0) = 0.1;
  s(0, 1) = s(1, 0) = 0.3;
  const SquaredDissimilarityMatrix dm(d), sm(s);
  EXPECT_EQ(combine(dm, sm, 0.0).matrix(), d);
  EXPECT_NEAR(combine(dm, sm, 2.0)(0, 1), 0.7, 1e-15);
  EXPECT_EQ(combine(dm, SquaredDissimilarityMatrix(Matrix::Zero(3, 3)), 1.0).matrix(), d);
  EXPECT_THROW(combine(dm, sm, -1.0), ArgumentError);
  EXPECT_THROW(combine(dm, SquaredDissimilarityMatrix(Matrix::Zero(4, 4)), 1.0), ArgumentError);
}

TEST(Combine, MonotoneInLambda) {
  const auto a = random_adjacency(15, 3);
  Rng rng(5);
  Matrix x(15, 2);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const auto d = d0_hat(a, {true, 1});
  const auto s = s_hat(FeatureMatrix(x));
  Matrix prev = combine(d, s, 0.0).matrix();
  for (double l : {0.01, 0.1, 1.0, 5.0}) {
    const Matrix cur = combine(d, s, l).matrix();
    EXPECT_TRUE((cur.array() >= prev.array()).all());
    prev = cur;
  }
}

TEST(D0Mod, FourCycleAndZeros) {
  EXPECT_EQ(d0_mod(cycle4(), {false, 0}).matrix(), oracle::d0_mod(cycle4().matrix()));
  EXPECT_EQ(d0_mod(AdjacencyMatrix(Matrix::Zero(4, 4)), {false, 0}).matrix(), Matrix::Zero(4, 4));
}

TEST(D0Mod, MatchesOracle) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto a = random_adjacency(4 + static_cast<Index>(s % 5), s);
    EXPECT_EQ(d0_mod(a, {false, 0}).matrix(), oracle::d0_mod(a.matrix()));
  }
}

TEST(D0Mod, EntryIgnoresItsOwnEdge) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 12;
    Matrix m = random_adjacency(n, s).matrix();
    const Matrix before = d0_mod(AdjacencyMatrix(m), {true, s}).matrix();
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        Matrix flipped = m;
        flipped(i, j) = flipped(j, i) = 1.0 - m(i, j);
        ASSERT_EQ(d0_mod(AdjacencyMatrix(flipped), {true, s})(i, j), before(i, j));
      }
  }
}
