#include "fans/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace fans {

ProbabilityMatrix usvt_estimate(const Matrix& observed, const UsvtConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw ArgumentError("usvt: eta must be positive");
  const Index n = observed.rows();
  if (n < 2 || observed.cols() != n) throw ArgumentError("usvt: needs a square matrix, n >= 2");
  if (observed != observed.transpose())
    throw ArgumentError("usvt: observation matrix must be symmetric");

  // For a symmetric matrix the singular values are |eigenvalues| and the
  // singular vectors coincide with eigenvectors up to sign.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(observed);
  if (eig.info() != Eigen::Success) throw NumericalError("usvt: eigen-decomposition failed");

  const double threshold = (2.0 + cfg.eta) * std::sqrt(static_cast<double>(n));
  const Vector& values = eig.eigenvalues();
  const Matrix& vectors = eig.eigenvectors();
  Matrix recon = Matrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    if (std::abs(values(r)) < threshold) continue;
    recon.noalias() += values(r) * vectors.col(r) * vectors.col(r).transpose();
  }
  recon = recon.cwiseMax(0.0).cwiseMin(1.0);
  Matrix sym = 0.5 * (recon + recon.transpose());
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) sym(j, i) = sym(i, j);
  return ProbabilityMatrix(std::move(sym));
}

SasConfig SasConfig::for_size(Index n) {
  if (n < 1) throw ArgumentError("sas: needs at least one node");
  const auto h = std::max<Index>(
      1, static_cast<Index>(std::floor(std::log(static_cast<double>(std::max<Index>(n, 1))))));
  return SasConfig{(n + h - 1) / h};
}

ProbabilityMatrix sas_estimate(const AdjacencyMatrix& a, const SasConfig& cfg) {
  const Index n = a.size();
  if (n < 2) throw ArgumentError("sas: needs at least 2 nodes");
  if (cfg.bins < 1 || cfg.bins > n) throw ArgumentError("sas: bins must lie in [1, n]");
  const Index k = cfg.bins;

  const Vector degree = a.matrix().rowwise().sum();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return degree(x) < degree(y); });

  // position r in the degree order falls in bin floor(r k / n)
  std::vector<Index> bin(static_cast<std::size_t>(n));
  std::vector<double> bin_size(static_cast<std::size_t>(k), 0.0);
  for (Index r = 0; r < n; ++r) {
    const Index b = r * k / n;
    bin[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = b;
    bin_size[static_cast<std::size_t>(b)] += 1.0;
  }

  Matrix sums = Matrix::Zero(k, k);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      if (i != j) sums(bin[i], bin[j]) += a(i, j);

  const double density =
      a.matrix().sum() / (static_cast<double>(n) * static_cast<double>(n - 1));
  Matrix hist(k, k);
  for (Index b = 0; b < k; ++b)
    for (Index c = 0; c < k; ++c) {
      const double sb = bin_size[static_cast<std::size_t>(b)];
      const double sc = bin_size[static_cast<std::size_t>(c)];
      const double pairs = b == c ? sb * (sb - 1.0) : sb * sc;
      // a singleton bin has no off-diagonal pairs with itself; fall back to the density
      hist(b, c) = pairs > 0.0 ? sums(b, c) / pairs : density;
    }

  Matrix p(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) p(i, j) = hist(bin[i], bin[j]);
  return ProbabilityMatrix(std::move(p));
}

}  // namespace fans
