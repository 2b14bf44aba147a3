#include "fans/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "fans/dissimilarity.hpp"
#include "fans/estimator.hpp"
#include "fans/parallel.hpp"
#include "fans/rng.hpp"

namespace fans {
namespace {

struct Split {
  std::vector<Index> validation;
  std::vector<Index> training;
};

Index validation_size(Index n, double fraction) {
  return static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
}

Split random_split(Index n, Index held_out, Rng& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < held_out; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  Split s;
  s.validation.assign(perm.begin(), perm.begin() + held_out);
  s.training.assign(perm.begin() + held_out, perm.end());
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.training.begin(), s.training.end());
  return s;
}

// Position in `training` of the nearest training node in feature space;
// ties go to the smallest node index.
Index nearest_training_node(const Matrix& x, const std::vector<Index>& training, Index node) {
  Index best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < training.size(); ++t) {
    const double dist = (x.row(training[t]) - x.row(node)).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<Index>(t);
    }
  }
  return best;
}

std::int64_t tie_pairs(std::int64_t run) { return run * (run - 1) / 2; }

// Counts strict inversions while stably sorting v by value.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

std::vector<double> upper_triangle_sqrt(const SquaredDissimilarityMatrix& d) {
  const Index n = d.size();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.push_back(std::sqrt(d(i, j)));
  return out;
}

}  // namespace

std::vector<double> default_lambda_grid() { return {0.0, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0}; }

void CvConfig::validate(Index n) const {
  if (grid.empty()) throw ArgumentError("cv: lambda grid must not be empty");
  for (double l : grid)
    if (!(l >= 0.0) || !std::isfinite(l)) throw ArgumentError("cv: grid values must be >= 0");
  if (repeats < 1) throw ArgumentError("cv: repeats must be positive");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw ArgumentError("cv: validation fraction must lie in (0, 1)");
  if (n < 10) throw ArgumentError("cv: needs at least 10 nodes, got " + std::to_string(n));
  const Index v = validation_size(n, validation_fraction);
  if (v < 1 || n - v < 3)
    throw ArgumentError("cv: split leaves " + std::to_string(v) + " validation and " +
                        std::to_string(n - v) + " training nodes");
}

CvResult cross_validate(const AdjacencyMatrix& a, const FeatureMatrix& x, const CvConfig& cfg) {
  const Index n = a.size();
  cfg.validate(n);
  if (x.nodes() != n) throw ArgumentError("cv: feature rows do not match the number of nodes");
  const bool uses_features =
      std::any_of(cfg.grid.begin(), cfg.grid.end(), [](double l) { return l > 0.0; });
  if (uses_features && x.features() == 0)
    throw ArgumentError("cv: grid contains lambda > 0 but there are no features");

  const Index held_out = validation_size(n, cfg.validation_fraction);
  const auto q_count = static_cast<Index>(cfg.grid.size());
  CvResult result;
  result.losses = Matrix::Zero(q_count, cfg.repeats);

  parallel_for(static_cast<std::size_t>(cfg.repeats), cfg.threads, [&](std::size_t m) {
    Rng rng(cfg.seed, Stream::kCrossValidation, m);
    const Split split = random_split(n, held_out, rng);
    const AdjacencyMatrix a_train = induced_subgraph(a, split.training);
    const FeatureMatrix x_train = x.select_rows(split.training);

    const auto d0sq =
        d0_hat(a_train, TieBreakConfig{true, derive_seed(cfg.seed, Stream::kEstimator, m)});
    std::optional<SquaredDissimilarityMatrix> ssq;
    if (uses_features) ssq = s_hat(x_train);

    std::vector<Index> nearest;
    nearest.reserve(split.validation.size());
    for (Index v : split.validation)
      nearest.push_back(nearest_training_node(x.matrix(), split.training, v));

    const auto t_count = static_cast<Index>(split.training.size());
    const double pairs = static_cast<double>(split.validation.size()) * static_cast<double>(t_count);
    for (Index q = 0; q < q_count; ++q) {
      const double lambda = cfg.grid[static_cast<std::size_t>(q)];
      const ProbabilityMatrix fit = estimate_from_dissimilarity(
          a_train, d0sq, ssq ? &*ssq : nullptr, lambda, cfg.c0);
      double loss = 0.0;
      for (std::size_t v = 0; v < split.validation.size(); ++v) {
        const Index node = split.validation[v];
        const Index proxy = nearest[v];
        for (Index j = 0; j < t_count; ++j)
          loss += std::abs(a(node, split.training[static_cast<std::size_t>(j)]) - fit(proxy, j));
      }
      result.losses(q, static_cast<Index>(m)) = loss / pairs;
    }
  });

  result.mean_loss.resize(cfg.grid.size());
  std::size_t best = 0;
  for (std::size_t q = 0; q < cfg.grid.size(); ++q) {
    result.mean_loss[q] = result.losses.row(static_cast<Index>(q)).mean();
    const bool better = result.mean_loss[q] < result.mean_loss[best] ||
                        (result.mean_loss[q] == result.mean_loss[best] && cfg.grid[q] < cfg.grid[best]);
    if (better) best = q;
  }
  result.lambda_opt = cfg.grid[best];
  return result;
}

std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("kendall_tau: sequences differ in length");
  if (x.size() < 2) throw ArgumentError("kendall_tau: needs at least 2 observations");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::isnan(x[i]) || std::isnan(y[i])) throw ArgumentError("kendall_tau: NaN input");

  const std::size_t m = x.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const auto total = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(m - 1) / 2;
  std::int64_t x_ties = 0, joint_ties = 0;
  std::int64_t x_run = 1, joint_run = 1;
  for (std::size_t k = 1; k < m; ++k) {
    const std::size_t p = order[k - 1], c = order[k];
    if (x[p] == x[c]) {
      ++x_run;
      if (y[p] == y[c]) {
        ++joint_run;
      } else {
        joint_ties += tie_pairs(joint_run);
        joint_run = 1;
      }
    } else {
      x_ties += tie_pairs(x_run);
      joint_ties += tie_pairs(joint_run);
      x_run = joint_run = 1;
    }
  }
  x_ties += tie_pairs(x_run);
  joint_ties += tie_pairs(joint_run);

  std::vector<double> ys(m), scratch(m);
  for (std::size_t k = 0; k < m; ++k) ys[k] = y[order[k]];
  const std::int64_t discordant = count_inversions(ys, scratch, 0, m);

  std::int64_t y_ties = 0, y_run = 1;
  for (std::size_t k = 1; k < m; ++k) {
    if (ys[k] == ys[k - 1]) {
      ++y_run;
    } else {
      y_ties += tie_pairs(y_run);
      y_run = 1;
    }
  }
  y_ties += tie_pairs(y_run);

  const std::int64_t untied_x = total - x_ties;
  const std::int64_t untied_y = total - y_ties;
  if (untied_x == 0 || untied_y == 0) return std::nullopt;
  const std::int64_t numerator = total - x_ties - y_ties + joint_ties - 2 * discordant;
  const double tau = static_cast<double>(numerator) /
                     std::sqrt(static_cast<double>(untied_x) * static_cast<double>(untied_y));
  return std::clamp(tau, -1.0, 1.0);
}

ScreenResult screen_features(const AdjacencyMatrix& a, const FeatureMatrix& x,
                             const ScreenConfig& cfg) {
  if (!(cfg.threshold >= -1.0 && cfg.threshold <= 1.0))
    throw ArgumentError("screen: threshold must lie in [-1, 1]");
  if (a.size() < 3) throw ArgumentError("screen: needs at least 3 nodes");
  if (x.features() < 1) throw ArgumentError("screen: needs at least one feature");
  if (x.nodes() != a.size()) throw ArgumentError("screen: feature rows do not match nodes");

  const std::vector<double> d = upper_triangle_sqrt(d0_hat(a, TieBreakConfig{false, 0}));
  ScreenResult out;
  for (Index j = 0; j < x.features(); ++j) {
    const Index col[] = {j};
    const std::vector<double> s = upper_triangle_sqrt(s_hat(x.select_columns(col)));
    const auto tau = kendall_tau(d, s);
    out.taus.push_back(tau);
    if (tau && *tau >= cfg.threshold) out.kept.push_back(j);
  }
  return out;
}

}  // namespace fans
