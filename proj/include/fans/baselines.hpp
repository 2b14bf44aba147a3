#pragma once

#include "fans/types.hpp"

namespace fans {

struct UsvtConfig {
  double eta = 0.01;  // threshold slack: keep singular values >= (2 + eta) sqrt(n)
};

/// Universal singular value thresholding of a symmetric observation matrix.
/// Accepts any symmetric real matrix, not only 0/1 adjacency.
ProbabilityMatrix usvt_estimate(const Matrix& observed, const UsvtConfig& cfg = {});
inline ProbabilityMatrix usvt_estimate(const AdjacencyMatrix& a, const UsvtConfig& cfg = {}) {
  return usvt_estimate(a.matrix(), cfg);
}

struct SasConfig {
  Index bins = 1;

  /// ceil(n / h) bins with bandwidth h = floor(ln n) (at least 1).
  static SasConfig for_size(Index n);
};

/// Sorting-and-smoothing: degree-sorted block histogram.
ProbabilityMatrix sas_estimate(const AdjacencyMatrix& a, const SasConfig& cfg);

}  // namespace fans
