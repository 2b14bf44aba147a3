#include "fans/types.hpp"

#include <cmath>
#include <string>

namespace fans {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ArgumentError(std::string(what) + ": matrix must be square, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_symmetric(const Matrix& m, const char* what) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = j + 1; i < m.rows(); ++i) {
      if (m(i, j) != m(j, i)) {
        throw ArgumentError(std::string(what) + ": matrix is not symmetric at (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

LatentLabels::LatentLabels(std::vector<double> values) : values_(std::move(values)) {
  for (double u : values_) {
    if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("latent labels must lie in [0, 1]");
  }
}

AdjacencyMatrix::AdjacencyMatrix(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "adjacency");
  for (Index j = 0; j < m_.cols(); ++j) {
    if (m_(j, j) != 0.0) throw ArgumentError("adjacency: diagonal must be zero");
    for (Index i = 0; i < m_.rows(); ++i) {
      const double v = m_(i, j);
      if (v != 0.0 && v != 1.0) throw ArgumentError("adjacency: entries must be 0 or 1");
    }
  }
  require_symmetric(m_, "adjacency");
}

AdjacencyMatrix AdjacencyMatrix::from_edges(Index n,
                                            std::span<const std::pair<Index, Index>> edges) {
  if (n < 0) throw ArgumentError("adjacency: negative node count");
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ArgumentError("adjacency: edge endpoint out of range");
    }
    if (a == b) continue;
    m(a, b) = 1.0;
    m(b, a) = 1.0;
  }
  AdjacencyMatrix out;
  out.m_ = std::move(m);
  return out;
}

std::size_t AdjacencyMatrix::edge_count() const {
  std::size_t count = 0;
  for (Index j = 0; j < m_.cols(); ++j)
    for (Index i = j + 1; i < m_.rows(); ++i) count += m_(i, j) != 0.0;
  return count;
}

std::vector<std::pair<Index, Index>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index i = 0; i < m_.rows(); ++i)
    for (Index j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != 0.0) out.emplace_back(i, j);
  return out;
}

ProbabilityMatrix::ProbabilityMatrix(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "probability");
  for (Index j = 0; j < m_.cols(); ++j)
    for (Index i = 0; i < m_.rows(); ++i)
      if (!(m_(i, j) >= 0.0 && m_(i, j) <= 1.0))
        throw ArgumentError("probability: entries must lie in [0, 1]");
  require_symmetric(m_, "probability");
}

SquaredDissimilarityMatrix::SquaredDissimilarityMatrix(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "dissimilarity");
  for (Index j = 0; j < m_.cols(); ++j) {
    if (m_(j, j) != 0.0) throw ArgumentError("dissimilarity: diagonal must be zero");
    for (Index i = 0; i < m_.rows(); ++i)
      if (!(m_(i, j) >= 0.0) || !std::isfinite(m_(i, j)))
        throw ArgumentError("dissimilarity: entries must be finite and nonnegative");
  }
  require_symmetric(m_, "dissimilarity");
}

FeatureMatrix::FeatureMatrix(Matrix entries) : m_(std::move(entries)) {
  if (!m_.allFinite()) throw ArgumentError("features: entries must be finite");
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const Index> columns) const {
  Matrix out(m_.rows(), static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] < 0 || columns[c] >= m_.cols())
      throw ArgumentError("features: column index out of range");
    out.col(static_cast<Index>(c)) = m_.col(columns[c]);
  }
  return FeatureMatrix(std::move(out));
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const Index> rows) const {
  Matrix out(static_cast<Index>(rows.size()), m_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= m_.rows()) throw ArgumentError("features: row out of range");
    out.row(static_cast<Index>(r)) = m_.row(rows[r]);
  }
  return FeatureMatrix(std::move(out));
}

AdjacencyMatrix induced_subgraph(const AdjacencyMatrix& a, std::span<const Index> nodes) {
  const auto k = static_cast<Index>(nodes.size());
  Matrix out(k, k);
  for (Index c = 0; c < k; ++c)
    for (Index r = 0; r < k; ++r) out(r, c) = a(nodes[r], nodes[c]);
  return AdjacencyMatrix(std::move(out));
}

}  // namespace fans
