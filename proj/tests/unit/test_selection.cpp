#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "fans/graphon.hpp"
#include "fans/selection.hpp"
#include "oracles.hpp"

using namespace fans;

namespace {

struct Sample {
  AdjacencyMatrix a;
  FeatureMatrix x;
};

Sample draw(const GraphonSpec& g, std::size_t n, const std::vector<std::string>& ids, double sigma,
            std::uint64_t seed) {
  const auto labels = sample_labels(n, seed);
  FeatureSpec fs;
  for (const auto& id : ids) fs.components.push_back(FeatureComponent::parse(id));
  fs.sigma = sigma;
  return {sample_adjacency(compute_P(g, labels), seed), sample_features(fs, labels, seed)};
}

}  // namespace

TEST(Kendall, HandExamples) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> rev{4, 3, 2, 1};
  const std::vector<double> y{1, 3, 2, 4};
  EXPECT_DOUBLE_EQ(*kendall_tau(x, x), 1.0);
  EXPECT_DOUBLE_EQ(*kendall_tau(x, rev), -1.0);
  EXPECT_NEAR(*kendall_tau(x, y), 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(*kendall_tau(x, y), *oracle::kendall(x, y), 1e-15);
}

TEST(Kendall, ConstantIsUndefined) {
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> c{5, 5, 5};
  EXPECT_FALSE(kendall_tau(x, c).has_value());
  EXPECT_FALSE(kendall_tau(c, x).has_value());
  EXPECT_THROW(kendall_tau(std::vector<double>{1}, std::vector<double>{1}), ArgumentError);
  EXPECT_THROW(kendall_tau(x, std::vector<double>{1, 2}), ArgumentError);
}

TEST(Kendall, MatchesPairOracleWithHeavyTies) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + rng.below(60);
    const int levels = 1 + static_cast<int>(rng.below(6));
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
      y[i] = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels + 1)));
    }
    const auto got = kendall_tau(x, y);
    const auto want = oracle::kendall(x, y);
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) ASSERT_NEAR(*got, *want, 1e-12);
  }
}

TEST(Kendall, SymmetricAndRankInvariant) {
  Rng rng(3);
  std::vector<double> x(200), y(200), tx(200);
  for (std::size_t i = 0; i < 200; ++i) {
    x[i] = rng.normal();
    y[i] = x[i] + rng.normal();
    tx[i] = std::exp(3.0 * x[i]) + 7.0;
  }
  EXPECT_DOUBLE_EQ(*kendall_tau(x, y), *kendall_tau(y, x));
  EXPECT_DOUBLE_EQ(*kendall_tau(x, y), *kendall_tau(tx, y));
}

TEST(Screen, DuplicateColumnsShareTau) {
  auto s = draw(GraphonSpec::uniform_sum(), 60, {"f4", "f4", "gaussian-noise"}, 0.0, 4);
  const auto r = screen_features(s.a, s.x);
  ASSERT_EQ(r.taus.size(), 3u);
  EXPECT_EQ(*r.taus[0], *r.taus[1]);
}

TEST(Screen, ConstantFeatureDropped) {
  auto s = draw(GraphonSpec::uniform_sum(), 40, {"f1"}, 0.0, 2);
  Matrix x(40, 2);
  x.col(0) = s.x.matrix().col(0);
  x.col(1).setConstant(3.0);
  const auto r = screen_features(s.a, FeatureMatrix(x), ScreenConfig{-1.0});
  EXPECT_FALSE(r.taus[1].has_value());
  EXPECT_EQ(std::count(r.kept.begin(), r.kept.end(), 1), 0);
  EXPECT_THROW(screen_features(s.a, FeatureMatrix(x), ScreenConfig{1.5}), ArgumentError);
}

TEST(Screen, KeepsAlignedMonotoneFeature) {
  int kept = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto s = draw(GraphonSpec::uniform_sum(), 200, {"f4"}, 0.0, 1000 + t);
    const auto r = screen_features(s.a, s.x);
    if (!r.kept.empty()) ++kept;
  }
  EXPECT_GE(kept, 95);
}

TEST(CrossValidation, DegenerateGrid) {
  auto s = draw(GraphonSpec::sine(), 60, {"f1"}, 0.3, 1);
  CvConfig cfg;
  cfg.grid = {0.0};
  cfg.repeats = 3;
  const auto r = cross_validate(s.a, s.x, cfg);
  EXPECT_EQ(r.lambda_opt, 0.0);
  EXPECT_EQ(r.losses.rows(), 1);
  EXPECT_EQ(r.losses.cols(), 3);
}

TEST(CrossValidation, DuplicateGridValuesTie) {
  auto s = draw(GraphonSpec::logistic_distance(), 80, {"f1", "f2"}, 0.3, 2);
  CvConfig cfg;
  cfg.grid = {0.5, 0.1, 0.1, 0.5};
  cfg.repeats = 4;
  const auto r = cross_validate(s.a, s.x, cfg);
  EXPECT_EQ(r.mean_loss[1], r.mean_loss[2]);
  EXPECT_EQ(r.mean_loss[0], r.mean_loss[3]);
  EXPECT_TRUE(r.lambda_opt == 0.1 || r.lambda_opt == 0.5);
}

TEST(CrossValidation, LossesBoundedAndDeterministic) {
  auto s = draw(GraphonSpec::logistic_distance(), 100, {"f1", "f2", "f3", "f4"}, 0.3, 3);
  CvConfig cfg;
  cfg.seed = 17;
  const auto r = cross_validate(s.a, s.x, cfg);
  ASSERT_EQ(r.losses.rows(), static_cast<Index>(cfg.grid.size()));
  ASSERT_EQ(r.losses.cols(), cfg.repeats);
  EXPECT_TRUE(r.losses.allFinite());
  EXPECT_GE(r.losses.minCoeff(), 0.0);
  EXPECT_LE(r.losses.maxCoeff(), 1.0);
  cfg.threads = 4;
  const auto again = cross_validate(s.a, s.x, cfg);
  EXPECT_EQ(r.losses, again.losses);
  EXPECT_EQ(r.lambda_opt, again.lambda_opt);
  const auto best = std::min_element(r.mean_loss.begin(), r.mean_loss.end());
  EXPECT_EQ(r.lambda_opt, cfg.grid[static_cast<std::size_t>(best - r.mean_loss.begin())]);
}

TEST(CrossValidation, Preconditions) {
  auto s = draw(GraphonSpec::sine(), 9, {"f1"}, 0.3, 1);
  EXPECT_THROW(cross_validate(s.a, s.x, CvConfig{}), ArgumentError);
  auto t = draw(GraphonSpec::sine(), 40, {"f1"}, 0.3, 1);
  CvConfig cfg;
  cfg.validation_fraction = 1.0;
  EXPECT_THROW(cross_validate(t.a, t.x, cfg), ArgumentError);
  cfg = CvConfig{};
  cfg.grid = {};
  EXPECT_THROW(cross_validate(t.a, t.x, cfg), ArgumentError);
  cfg = CvConfig{};
  EXPECT_THROW(cross_validate(t.a, FeatureMatrix(Matrix::Zero(40, 0)), cfg), ArgumentError);
}

TEST(CrossValidation, HelpfulFeaturesPickPositiveLambda) {
  // g3 slices are monotone in u, so informative features should be used
  int positive = 0;
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto s = draw(GraphonSpec::logistic_distance(), 200, {"f1", "f2", "f3", "f4"}, 0.3, 50 + t);
    CvConfig cfg;
    cfg.seed = t;
    if (cross_validate(s.a, s.x, cfg).lambda_opt > 0.0) ++positive;
  }
  EXPECT_GE(positive, 3);
}
