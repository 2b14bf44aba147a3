#include "fans/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fans {

double bandwidth(Index n, double c0) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw ArgumentError("C0 must be positive");
  if (n < 2) throw ArgumentError("bandwidth: needs at least 2 nodes");
  const auto nd = static_cast<double>(n);
  const double h = c0 * std::sqrt(std::log(nd) / nd);
  if (h > 1.0) {
    Index min_n = n + 1;
    while (c0 * std::sqrt(std::log(static_cast<double>(min_n)) / static_cast<double>(min_n)) > 1.0)
      ++min_n;
    std::ostringstream msg;
    msg << "bandwidth h = " << h << " exceeds 1 at n = " << n << " with C0 = " << c0
        << "; the minimum feasible n is " << min_n;
    throw ArgumentError(msg.str());
  }
  return h;
}

Index neighborhood_rank(Index n, double c0) {
  const double h = bandwidth(n, c0);
  const auto k = static_cast<Index>(std::ceil(h * static_cast<double>(n - 1)));
  return std::clamp<Index>(k, 1, n - 1);
}

double row_neighborhood(std::span<const double> row, Index self, Index rank,
                        std::vector<Index>& members) {
  std::vector<double> others;
  others.reserve(row.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    if (static_cast<Index>(i) != self) others.push_back(row[i]);
  auto kth = others.begin() + (rank - 1);
  std::nth_element(others.begin(), kth, others.end());
  const double threshold = *kth;
  members.clear();
  for (std::size_t i = 0; i < row.size(); ++i)
    if (static_cast<Index>(i) != self && row[i] <= threshold)
      members.push_back(static_cast<Index>(i));
  return threshold;
}

NeighborhoodSet neighborhoods(const SquaredDissimilarityMatrix& dsq, double c0) {
  const Index n = dsq.size();
  if (n < 3) throw ArgumentError("neighborhoods: needs at least 3 nodes");
  const Index rank = neighborhood_rank(n, c0);
  NeighborhoodSet out;
  out.members.resize(static_cast<std::size_t>(n));
  out.thresholds.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    // dsq is symmetric, so column i is row i in contiguous storage.
    std::span<const double> row(dsq.matrix().col(i).data(), static_cast<std::size_t>(n));
    out.thresholds[static_cast<std::size_t>(i)] =
        row_neighborhood(row, i, rank, out.members[static_cast<std::size_t>(i)]);
  }
  return out;
}

ProbabilityMatrix smooth(const AdjacencyMatrix& a, const NeighborhoodSet& nbhd) {
  const Index n = a.size();
  if (static_cast<Index>(nbhd.members.size()) != n)
    throw ArgumentError("smooth: neighborhood set does not match the graph size");
  // column i of `avg` holds the average of the adjacency rows in N_i
  Matrix avg(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& members = nbhd.members[static_cast<std::size_t>(i)];
    if (members.empty()) throw std::logic_error("smooth: empty neighborhood");
    auto col = avg.col(i);
    col.setZero();
    for (Index m : members) col += a.matrix().col(m);
    col /= static_cast<double>(members.size());
  }
  Matrix p(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j; i < n; ++i) {
      const double v = 0.5 * (avg(j, i) + avg(i, j));
      p(i, j) = v;
      p(j, i) = v;
    }
  return ProbabilityMatrix(std::move(p));
}

ProbabilityMatrix estimate_from_dissimilarity(const AdjacencyMatrix& a,
                                              const SquaredDissimilarityMatrix& d0sq,
                                              const SquaredDissimilarityMatrix* ssq,
                                              double lambda, double c0) {
  if (!(lambda >= 0.0)) throw ArgumentError("lambda must be nonnegative");
  if (lambda > 0.0) {
    if (ssq == nullptr) throw ArgumentError("lambda > 0 requires node features");
    return smooth(a, neighborhoods(combine(d0sq, *ssq, lambda), c0));
  }
  return smooth(a, neighborhoods(d0sq, c0));
}

ProbabilityMatrix fans_estimate(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                const EstimatorConfig& cfg) {
  if (!(cfg.lambda >= 0.0)) throw ArgumentError("lambda must be nonnegative");
  if (cfg.lambda > 0.0 && (x == nullptr || x->features() == 0))
    throw ArgumentError("lambda > 0 requires node features");
  if (x != nullptr && x->nodes() != a.size())
    throw ArgumentError("feature rows do not match the number of nodes");
  bandwidth(a.size(), cfg.c0);
  const auto d0sq = d0_hat(a, TieBreakConfig{cfg.tie_correction, cfg.seed});
  if (cfg.lambda > 0.0) {
    const auto ssq = s_hat(*x);
    return estimate_from_dissimilarity(a, d0sq, &ssq, cfg.lambda, cfg.c0);
  }
  return estimate_from_dissimilarity(a, d0sq, nullptr, 0.0, cfg.c0);
}

ProbabilityMatrix nbs_estimate(const AdjacencyMatrix& a, double c0) {
  return fans_estimate(a, nullptr, EstimatorConfig{0.0, c0, false, 0});
}

}  // namespace fans
