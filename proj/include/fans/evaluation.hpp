#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fans/estimator.hpp"
#include "fans/types.hpp"

namespace fans {

struct MetricReport {
  double mse = 0.0;
  double mae = 0.0;
  Index n = 0;
  std::string method;
  std::uint64_t seed = 0;
};

/// Mean squared and absolute error over all n^2 entries, diagonal included.
MetricReport mse_mae(const ProbabilityMatrix& estimate, const ProbabilityMatrix& truth);

/// One-sided paired t-test p-value for H1: mean(a) < mean(b), with len - 1
/// degrees of freedom. Zero-variance differences give 0, 1 or 0.5 by the sign
/// of the mean difference.
double paired_t_test(std::span<const double> a, std::span<const double> b);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) ... (1,1), nondecreasing in both coordinates
  double auc = 0.0;
};

/// ROC from a threshold sweep over distinct scores; the AUC is the
/// Mann-Whitney statistic with ties counted one half.
RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

struct NodePair {
  Index i = 0;
  Index j = 0;
  friend bool operator==(const NodePair&, const NodePair&) = default;
};

struct PairScore {
  Index i = 0;
  Index j = 0;
  double score = 0.0;
};

enum class LooMode {
  /// Each pair is scored on the graph with A_ij = A_ji = 0, using the modified
  /// inner product; the score is exactly independent of A_ij.
  kExact,
  /// One modified dissimilarity matrix and one set of neighborhoods shared by
  /// all pairs. Entry (i, j) of the dissimilarity ignores A_ij, but other
  /// entries in rows i and j may still see it.
  kShared,
};

struct LinkPredictionConfig {
  EstimatorConfig estimator;
  LooMode mode = LooMode::kExact;
  unsigned threads = 1;
};

/// Every unordered off-diagonal pair (i < j).
std::vector<NodePair> all_pairs(Index n);

/// `count` pairs: every observed edge when they fit, topped up with uniformly
/// sampled non-edges; otherwise a uniform sample of all pairs. Sorted by (i, j).
std::vector<NodePair> sample_pairs(const AdjacencyMatrix& a, std::size_t count, std::uint64_t seed);

/// Leave-one-out link prediction scores for the requested pairs.
std::vector<PairScore> loo_link_predict(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                        const LinkPredictionConfig& cfg,
                                        std::span<const NodePair> pairs);

}  // namespace fans
