#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fans/dissimilarity.hpp"
#include "fans/types.hpp"

namespace fans {

struct EstimatorConfig {
  double lambda = 0.0;
  double c0 = 1.0;
  bool tie_correction = true;
  std::uint64_t seed = 0;
};

/// Per-node quantile neighborhoods. members[i] is sorted and never contains i.
struct NeighborhoodSet {
  std::vector<std::vector<Index>> members;
  std::vector<double> thresholds;
};

/// h = c0 * sqrt(ln n / n). Throws if h is outside (0, 1].
double bandwidth(Index n, double c0);

/// Order-statistic rank ceil(h (n - 1)) used for the quantile threshold.
Index neighborhood_rank(Index n, double c0);

/// Neighborhood of one node from its dissimilarity row (row[self] is ignored).
/// Returns the threshold and fills `members` with {i' != self : row[i'] <= threshold}.
double row_neighborhood(std::span<const double> row, Index self, Index rank,
                        std::vector<Index>& members);

NeighborhoodSet neighborhoods(const SquaredDissimilarityMatrix& dsq, double c0);

/// Phat_ij = (mean_{i' in N_i} A_i'j + mean_{j' in N_j} A_ij') / 2.
ProbabilityMatrix smooth(const AdjacencyMatrix& a, const NeighborhoodSet& nbhd);

/// Smoothed estimate from a precomputed adjacency dissimilarity and optional
/// feature dissimilarity (required when lambda > 0).
ProbabilityMatrix estimate_from_dissimilarity(const AdjacencyMatrix& a,
                                              const SquaredDissimilarityMatrix& d0sq,
                                              const SquaredDissimilarityMatrix* ssq,
                                              double lambda, double c0);

/// Feature-assisted neighborhood smoothing.
ProbabilityMatrix fans_estimate(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                const EstimatorConfig& cfg);
inline ProbabilityMatrix fans_estimate(const AdjacencyMatrix& a, const FeatureMatrix& x,
                                       const EstimatorConfig& cfg) {
  return fans_estimate(a, &x, cfg);
}
inline ProbabilityMatrix fans_estimate(const AdjacencyMatrix& a, const EstimatorConfig& cfg) {
  return fans_estimate(a, nullptr, cfg);
}

/// Plain neighborhood smoothing: lambda = 0, no tie perturbation.
ProbabilityMatrix nbs_estimate(const AdjacencyMatrix& a, double c0 = 1.0);

}  // namespace fans
