#include "fans/dissimilarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fans/rng.hpp"

namespace fans {
namespace {

void require_nodes(Index n, const char* what) {
  if (n < 3) {
    throw ArgumentError(std::string(what) + ": needs at least 3 nodes, got " + std::to_string(n));
  }
}

template <typename EntryFn>
Matrix symmetric_fill(Index n, EntryFn&& entry) {
  Matrix out = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const double v = entry(j, i);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

// X X^T with every entry summed over features in the same order, so equal
// rows of X give bitwise-equal Gram columns.
Matrix ordered_gram(const Matrix& x) {
  const Matrix xt = x.transpose();
  const Index n = x.rows();
  const Index p = x.cols();
  Matrix gram(n, n);
  for (Index j = 0; j < n; ++j) {
    const double* xj = xt.col(j).data();
    for (Index i = j; i < n; ++i) {
      const double* xi = xt.col(i).data();
      double acc = 0.0;
      for (Index m = 0; m < p; ++m) acc += xi[m] * xj[m];
      gram(i, j) = acc;
      gram(j, i) = acc;
    }
  }
  return gram;
}

}  // namespace

double tie_offset(std::uint64_t seed, Index i, Index j) {
  const auto lo = static_cast<std::uint64_t>(std::min(i, j));
  const auto hi = static_cast<std::uint64_t>(std::max(i, j));
  return to_open_unit(splitmix64(derive_seed(seed, Stream::kTieBreak, lo, hi)));
}

namespace detail {

double d0_raw(const Matrix& gram, Index i, Index j) {
  const Index n = gram.rows();
  const double* gi = gram.col(i).data();
  const double* gj = gram.col(j).data();
  double best = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    best = std::max(best, std::abs(gi[k] - gj[k]));
  }
  return best;
}

double d0_mod_raw(const Matrix& a, const Matrix& gram, Index i, Index j) {
  const Index n = gram.rows();
  const double* gi = gram.col(i).data();
  const double* gj = gram.col(j).data();
  const double* ai = a.col(i).data();
  const double* aj = a.col(j).data();
  const double e = a(i, j);
  double best = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    // G_ik and G_jk without their m = j and m = i terms (diagonals are zero).
    best = std::max(best, std::abs((gi[k] - e * aj[k]) - (gj[k] - e * ai[k])));
  }
  return best;
}

double d0_scale(double raw, Index n, const TieBreakConfig& tie, Index i, Index j) {
  const auto nd = static_cast<double>(n);
  if (!tie.enabled) return raw / nd;
  return (raw + tie_offset(tie.seed, i, j) / nd) / nd;
}

}  // namespace detail

SquaredDissimilarityMatrix d0_hat(const AdjacencyMatrix& a, const TieBreakConfig& tie) {
  const Index n = a.size();
  require_nodes(n, "d0_hat");
  const Matrix gram = a.matrix() * a.matrix().transpose();
  return SquaredDissimilarityMatrix(symmetric_fill(n, [&](Index i, Index j) {
    return detail::d0_scale(detail::d0_raw(gram, i, j), n, tie, i, j);
  }));
}

SquaredDissimilarityMatrix d0_mod(const AdjacencyMatrix& a, const TieBreakConfig& tie) {
  const Index n = a.size();
  require_nodes(n, "d0_mod");
  const Matrix gram = a.matrix() * a.matrix().transpose();
  return SquaredDissimilarityMatrix(symmetric_fill(n, [&](Index i, Index j) {
    return detail::d0_scale(detail::d0_mod_raw(a.matrix(), gram, i, j), n, tie, i, j);
  }));
}

SquaredDissimilarityMatrix s_hat(const FeatureMatrix& x) {
  const Index n = x.nodes();
  const Index p = x.features();
  require_nodes(n, "s_hat");
  if (p < 1) throw ArgumentError("s_hat: needs at least one feature");
  const Matrix gram = ordered_gram(x.matrix());
  const auto pd = static_cast<double>(p);
  return SquaredDissimilarityMatrix(symmetric_fill(n, [&](Index i, Index j) {
    return detail::d0_raw(gram, i, j) / pd;
  }));
}

SquaredDissimilarityMatrix combine(const SquaredDissimilarityMatrix& d0sq,
                                   const SquaredDissimilarityMatrix& ssq, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ArgumentError("combine: lambda must be a finite nonnegative number");
  if (d0sq.size() != ssq.size()) throw ArgumentError("combine: dimension mismatch");
  if (lambda == 0.0) return d0sq;
  return SquaredDissimilarityMatrix(d0sq.matrix() + lambda * ssq.matrix());
}

}  // namespace fans
