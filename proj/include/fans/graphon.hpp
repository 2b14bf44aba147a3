#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fans/types.hpp"

namespace fans {

enum class GraphonKind {
  kUniformSum,         // g0: (u + v) / 2
  kSbm,                // g1: K-block stochastic block model
  kSine,               // g2: periodic, rank 3
  kLogisticDistance,   // g3: full rank, smooth in |u - v|
  kOscillating,        // g4: full rank, local structure near the origin
  kConstant,
  kPiecewiseConstant,
  kCustom,
};

/// Closed-form symmetric function w : [0,1]^2 -> [0,1].
struct GraphonSpec {
  GraphonKind kind = GraphonKind::kUniformSum;
  int blocks = 0;                    // kSbm
  double level = 0.0;                // kConstant
  std::vector<double> breakpoints;   // kPiecewiseConstant: 0 = x_0 < ... < x_K = 1
  Matrix values;                     // kPiecewiseConstant: symmetric K x K table
  std::string custom_id;             // kCustom

  static GraphonSpec uniform_sum();
  static GraphonSpec sbm(int blocks);
  static GraphonSpec sine();
  static GraphonSpec logistic_distance();
  static GraphonSpec oscillating();
  static GraphonSpec constant(double level);
  static GraphonSpec piecewise_constant(std::vector<double> breakpoints, Matrix values);
  static GraphonSpec custom(std::string id);

  /// Catalog name: "g0".."g4", "constant", "piecewise-constant" or the custom id.
  std::string name() const;
  void validate() const;
};

/// Block count floor(ln n) used for the sbm graphon at network size n (at least 1).
int sbm_blocks_for(std::size_t n);

/// Resolves "g0".."g4" or the long kind names; sbm gets floor(ln n) blocks.
GraphonSpec graphon_by_name(std::string_view name, std::size_t n);

/// Registers w for GraphonSpec::custom(id). The function is evaluated at
/// (min(u,v), max(u,v)) so symmetry holds by construction.
void register_graphon(const std::string& id, std::function<double(double, double)> w);

double eval_graphon(const GraphonSpec& spec, double u, double v);

/// One component f_j of the feature map.
struct FeatureComponent {
  enum class Kind { kF1, kF2, kF3, kF4, kCosine, kGaussianNoise, kCustom };
  Kind kind = Kind::kF1;
  int harmonic = 1;       // kCosine: cos(2^(harmonic-1) * pi * u)
  std::string custom_id;  // kCustom

  /// Parses "f1".."f4", "cos<i>", "gaussian-noise", or a registered custom id.
  static FeatureComponent parse(std::string_view id);
  std::string name() const;
  bool deterministic() const noexcept { return kind != Kind::kGaussianNoise; }
};

void register_feature(const std::string& id, std::function<double(double)> f);

struct FeatureSpec {
  std::vector<FeatureComponent> components;
  double sigma = 0.0;
  bool standardized = true;

  void validate() const;
};

/// f(u) for a deterministic component.
double eval_feature(const FeatureComponent& component, double u);

/// Standard deviation of f(U), U ~ Uniform(0,1), by 2^15-point midpoint quadrature.
double sd_estimate(const FeatureComponent& component);

LatentLabels sample_labels(std::size_t n, std::uint64_t seed);

/// P_ij = w(u_i, u_j) for all pairs, diagonal included.
ProbabilityMatrix compute_P(const GraphonSpec& spec, const LatentLabels& labels);

/// Independent Bernoulli(P_ij) draws on the upper triangle, mirrored; zero diagonal.
AdjacencyMatrix sample_adjacency(const ProbabilityMatrix& p, std::uint64_t seed);

/// X_ij = f_j(u_i) / sd_j + e_ij with e_ij ~ N(0, sigma^2). A gaussian-noise
/// component contributes a standard normal draw in place of f_j(u_i) / sd_j.
FeatureMatrix sample_features(const FeatureSpec& spec, const LatentLabels& labels,
                              std::uint64_t seed);

}  // namespace fans
