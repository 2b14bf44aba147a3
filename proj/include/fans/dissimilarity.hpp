#pragma once

#include <cstdint>

#include "fans/types.hpp"

namespace fans {

/// Random perturbation that breaks ties among the integer-valued adjacency
/// dissimilarities. One t ~ Uniform(0,1) per unordered node pair.
struct TieBreakConfig {
  bool enabled = true;
  std::uint64_t seed = 0;
};

/// The perturbation t in (0, 1) for the unordered pair {i, j}.
double tie_offset(std::uint64_t seed, Index i, Index j);

/// Adjacency dissimilarity max_{k != i,j} |<A_i - A_j, A_k>| / n, plus t/n
/// inside the max (then divided by n) when tie breaking is enabled.
/// Requires n >= 3.
SquaredDissimilarityMatrix d0_hat(const AdjacencyMatrix& a, const TieBreakConfig& tie);

/// Feature dissimilarity max_{k != i,j} |<X_i - X_j, X_k>| / p. Requires n >= 3, p >= 1.
SquaredDissimilarityMatrix s_hat(const FeatureMatrix& x);

/// d0sq + lambda * ssq, entrywise.
SquaredDissimilarityMatrix combine(const SquaredDissimilarityMatrix& d0sq,
                                   const SquaredDissimilarityMatrix& ssq, double lambda);

/// d0_hat with every inner product for the pair (i, j) restricted to
/// coordinates m outside {i, j}; entry (i, j) then never reads A_ij.
SquaredDissimilarityMatrix d0_mod(const AdjacencyMatrix& a, const TieBreakConfig& tie);

namespace detail {

/// Integer-valued max over k of |sum_{m not in {i,j}} (A_im - A_jm) A_km|,
/// given the Gram matrix G = A A^T. Exact in double for any realistic n.
double d0_mod_raw(const Matrix& a, const Matrix& gram, Index i, Index j);

/// Integer-valued max over k of |G_ik - G_jk|.
double d0_raw(const Matrix& gram, Index i, Index j);

/// Maps an integer-valued raw maximum to the stored squared dissimilarity.
double d0_scale(double raw, Index n, const TieBreakConfig& tie, Index i, Index j);

}  // namespace detail

}  // namespace fans
