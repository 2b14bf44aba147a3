#include "fans/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <boost/math/distributions/students_t.hpp>

#include "fans/dissimilarity.hpp"
#include "fans/parallel.hpp"
#include "fans/rng.hpp"

namespace fans {

MetricReport mse_mae(const ProbabilityMatrix& estimate, const ProbabilityMatrix& truth) {
  if (estimate.size() != truth.size()) throw ArgumentError("mse_mae: dimension mismatch");
  const Matrix diff = estimate.matrix() - truth.matrix();
  const double cells = static_cast<double>(diff.size());
  MetricReport r;
  r.n = truth.size();
  if (cells == 0.0) return r;
  r.mse = diff.squaredNorm() / cells;
  r.mae = diff.cwiseAbs().sum() / cells;
  return r;
}

double paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("paired_t_test: sequences differ in length");
  if (a.size() < 2) throw ArgumentError("paired_t_test: needs at least 2 pairs");
  const std::size_t m = a.size();
  std::vector<double> diff(m);
  for (std::size_t i = 0; i < m; ++i) diff[i] = a[i] - b[i];
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / static_cast<double>(m);
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double var = ss / static_cast<double>(m - 1);
  if (var == 0.0) {
    if (mean < 0.0) return 0.0;
    if (mean > 0.0) return 1.0;
    return 0.5;
  }
  const double t = mean / std::sqrt(var / static_cast<double>(m));
  boost::math::students_t dist(static_cast<double>(m - 1));
  return boost::math::cdf(dist, t);
}

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ArgumentError("roc_auc: length mismatch");
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw ArgumentError("roc_auc: labels must be 0 or 1");
    pos += static_cast<std::size_t>(l);
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw ArgumentError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return scores[x] > scores[y]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  double area = 0.0;  // in units of (pos * neg); trapezoids give half credit to ties
  std::size_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t group_tp = 0, group_fp = 0;
    const double s = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == s; ++k)
      (labels[order[k]] ? group_tp : group_fp) += 1;
    area += static_cast<double>(group_fp) * (static_cast<double>(tp) + 0.5 * static_cast<double>(group_tp));
    tp += group_tp;
    fp += group_fp;
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos)});
  }
  curve.auc = area / (static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

std::vector<NodePair> all_pairs(Index n) {
  std::vector<NodePair> out;
  if (n < 2) return out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

std::vector<NodePair> sample_pairs(const AdjacencyMatrix& a, std::size_t count,
                                   std::uint64_t seed) {
  std::vector<NodePair> everything = all_pairs(a.size());
  if (count >= everything.size()) return everything;

  Rng rng(seed, Stream::kPairSample);
  auto take_uniform = [&rng](std::vector<NodePair>& pool, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
  };

  std::vector<NodePair> out;
  std::vector<NodePair> edges, non_edges;
  for (const NodePair& p : everything) (a(p.i, p.j) != 0.0 ? edges : non_edges).push_back(p);
  if (edges.size() <= count) {
    out = std::move(edges);
    take_uniform(non_edges, count - out.size());
    out.insert(out.end(), non_edges.begin(), non_edges.end());
  } else {
    take_uniform(everything, count);
    out = std::move(everything);
  }
  std::sort(out.begin(), out.end(),
            [](const NodePair& x, const NodePair& y) { return x.i < y.i || (x.i == y.i && x.j < y.j); });
  return out;
}

namespace {

void check_pairs(Index n, std::span<const NodePair> pairs) {
  for (const NodePair& p : pairs) {
    if (p.i < 0 || p.j < 0 || p.i >= n || p.j >= n)
      throw ArgumentError("loo_link_predict: pair index out of range");
    if (p.i == p.j) throw ArgumentError("loo_link_predict: pair lies on the diagonal");
  }
}

// Dissimilarity row of `node` under the modified inner product on (a, gram).
void modified_row(const Matrix& a, const Matrix& gram, const Matrix* ssq, Index node,
                  const EstimatorConfig& est, std::vector<double>& row) {
  const Index n = a.rows();
  const TieBreakConfig tie{est.tie_correction, est.seed};
  row.assign(static_cast<std::size_t>(n), 0.0);
  for (Index k = 0; k < n; ++k) {
    if (k == node) continue;
    double d = detail::d0_scale(detail::d0_mod_raw(a, gram, node, k), n, tie, node, k);
    if (est.lambda > 0.0) d = d + est.lambda * (*ssq)(node, k);
    row[static_cast<std::size_t>(k)] = d;
  }
}

double neighborhood_mean(const Matrix& a, const std::vector<Index>& members, Index col) {
  double sum = 0.0;
  for (Index m : members) sum += a(m, col);
  return sum / static_cast<double>(members.size());
}

}  // namespace

std::vector<PairScore> loo_link_predict(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                        const LinkPredictionConfig& cfg,
                                        std::span<const NodePair> pairs) {
  const Index n = a.size();
  const EstimatorConfig& est = cfg.estimator;
  if (n < 4) throw ArgumentError("loo_link_predict: needs at least 4 nodes");
  if (!(est.lambda >= 0.0)) throw ArgumentError("lambda must be nonnegative");
  if (est.lambda > 0.0 && (x == nullptr || x->features() == 0))
    throw ArgumentError("lambda > 0 requires node features");
  if (x != nullptr && x->nodes() != n)
    throw ArgumentError("feature rows do not match the number of nodes");
  check_pairs(n, pairs);
  const Index rank = neighborhood_rank(n, est.c0);

  std::optional<SquaredDissimilarityMatrix> ssq;
  if (est.lambda > 0.0) ssq = s_hat(*x);
  std::vector<PairScore> out(pairs.size());

  if (cfg.mode == LooMode::kShared) {
    const auto d0sq = d0_mod(a, TieBreakConfig{est.tie_correction, est.seed});
    const ProbabilityMatrix p =
        estimate_from_dissimilarity(a, d0sq, ssq ? &*ssq : nullptr, est.lambda, est.c0);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      out[k] = {pairs[k].i, pairs[k].j, p(pairs[k].i, pairs[k].j)};
    return out;
  }

  const Matrix gram = a.matrix() * a.matrix().transpose();
  const Matrix* s = ssq ? &ssq->matrix() : nullptr;
  const std::size_t chunks = std::min<std::size_t>(resolve_threads(cfg.threads), std::max<std::size_t>(pairs.size(), 1));
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    Matrix masked = a.matrix();
    Matrix masked_gram = gram;
    std::vector<double> row_i, row_j;
    std::vector<Index> nbhd_i, nbhd_j;
    const std::size_t begin = pairs.size() * c / chunks;
    const std::size_t end = pairs.size() * (c + 1) / chunks;
    for (std::size_t k = begin; k < end; ++k) {
      const Index i = pairs[k].i, j = pairs[k].j;
      const bool edge = masked(i, j) != 0.0;
      if (edge) {
        masked(i, j) = masked(j, i) = 0.0;
        // only rows/columns i and j of the Gram matrix see the masked entry
        for (Index node : {i, j}) {
          masked_gram.col(node).noalias() = masked * masked.col(node);
          masked_gram.row(node) = masked_gram.col(node).transpose();
        }
      }
      modified_row(masked, masked_gram, s, i, est, row_i);
      modified_row(masked, masked_gram, s, j, est, row_j);
      row_neighborhood(row_i, i, rank, nbhd_i);
      row_neighborhood(row_j, j, rank, nbhd_j);
      const double score =
          0.5 * (neighborhood_mean(masked, nbhd_i, j) + neighborhood_mean(masked, nbhd_j, i));
      out[k] = {i, j, score};
      if (edge) {
        masked(i, j) = masked(j, i) = 1.0;
        for (Index node : {i, j}) {
          masked_gram.col(node) = gram.col(node);
          masked_gram.row(node) = gram.row(node);
        }
      }
    }
  });
  return out;
}

}  // namespace fans
