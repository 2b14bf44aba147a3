#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fans/types.hpp"

namespace fans {

/// {0, 0.01, 0.05, 0.1, 0.5, 1, 5}
std::vector<double> default_lambda_grid();

struct CvConfig {
  std::vector<double> grid = default_lambda_grid();
  int repeats = 10;
  double validation_fraction = 0.10;
  double c0 = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void validate(Index n) const;
};

struct CvResult {
  double lambda_opt = 0.0;
  Matrix losses;                 // grid.size() x repeats, each in [0, 1]
  std::vector<double> mean_loss; // per grid point, averaged over repeats
};

/// Node-splitting cross-validation for lambda. Each repeat holds out
/// round(fraction * n) nodes, fits on the rest, predicts held-out rows from
/// each held-out node's nearest training node in feature space, and scores
/// the mean absolute error on held-out x training pairs.
CvResult cross_validate(const AdjacencyMatrix& a, const FeatureMatrix& x, const CvConfig& cfg);

/// Tie-adjusted Kendall tau-b in O(m log m). Empty when either sequence is constant.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y);

struct ScreenConfig {
  double threshold = 0.03;
};

struct ScreenResult {
  std::vector<Index> kept;
  std::vector<std::optional<double>> taus;  // empty optional = undefined, never kept
};

/// Keeps feature columns whose single-column dissimilarity is Kendall-correlated
/// (upper-triangle pairs) with the un-perturbed adjacency dissimilarity.
ScreenResult screen_features(const AdjacencyMatrix& a, const FeatureMatrix& x,
                             const ScreenConfig& cfg = {});

}  // namespace fans
