#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fans/common.hpp"

namespace fans {

/// Latent node labels, each in [0, 1].
class LatentLabels {
 public:
  LatentLabels() = default;
  explicit LatentLabels(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Symmetric 0/1 matrix with zero diagonal (simple undirected graph).
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(Matrix entries);

  /// Builds from unordered 0-based pairs; self-loops are dropped and duplicates collapse.
  static AdjacencyMatrix from_edges(Index n, std::span<const std::pair<Index, Index>> edges);

  Index size() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }
  std::size_t edge_count() const;
  std::vector<std::pair<Index, Index>> edges() const;

 private:
  Matrix m_;
};

/// Symmetric matrix with entries in [0, 1]; holds a truth P or an estimate.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix() = default;
  explicit ProbabilityMatrix(Matrix entries);

  Index size() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Symmetric, nonnegative, zero-diagonal matrix of squared dissimilarities.
class SquaredDissimilarityMatrix {
 public:
  SquaredDissimilarityMatrix() = default;
  explicit SquaredDissimilarityMatrix(Matrix entries);

  Index size() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// n x p matrix of finite node features; row i is the feature vector of node i.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(Matrix entries);

  Index nodes() const noexcept { return m_.rows(); }
  Index features() const noexcept { return m_.cols(); }
  const Matrix& matrix() const noexcept { return m_; }

  FeatureMatrix select_columns(std::span<const Index> columns) const;
  FeatureMatrix select_rows(std::span<const Index> rows) const;

 private:
  Matrix m_;
};

/// Principal submatrix on `nodes` (in the given order).
AdjacencyMatrix induced_subgraph(const AdjacencyMatrix& a, std::span<const Index> nodes);

}  // namespace fans
