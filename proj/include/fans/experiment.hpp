#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fans/config.hpp"
#include "fans/evaluation.hpp"
#include "fans/graphon.hpp"
#include "fans/types.hpp"

namespace fans {

/// One synthetic network drawn from a graphon (and optional feature map).
struct TrialData {
  std::uint64_t seed = 0;
  LatentLabels labels;
  ProbabilityMatrix p;
  AdjacencyMatrix a;
  std::optional<FeatureMatrix> x;
};

/// Seed of trial `trial` under master seed `master`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

TrialData simulate_trial(const GraphonSpec& graphon, const FeatureSpec* features, std::size_t n,
                         std::uint64_t seed);

struct MethodFit {
  ProbabilityMatrix estimate;
  double lambda = 0.0;       // fans only
  std::vector<Index> kept;   // fans: feature columns surviving screening
};

/// Fits one configured method. For fans without a fixed lambda, features are
/// screened and lambda is cross-validated; with no surviving feature lambda = 0.
MethodFit run_method(const MethodSettings& method, const AdjacencyMatrix& a,
                     const FeatureMatrix* x, std::uint64_t seed);

struct BenchmarkRow {
  std::string graphon;
  std::string method;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
  double mae = 0.0;
  double lambda = 0.0;
  std::string error;  // empty on success
};

struct SummaryRow {
  std::string graphon;
  std::string method;
  std::size_t trials = 0;  // successful trials
  double mean_mse = 0.0;
  double se_mse = 0.0;
  double mean_mae = 0.0;
  double se_mae = 0.0;
  std::optional<double> p_vs_nbs;  // fans rows: one-sided paired t-test of fans < nbs
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;  // graphon-major, then trial, then method
  std::vector<SummaryRow> summary;
  std::size_t failures = 0;
};

BenchmarkResult run_benchmark(const ExperimentConfig& cfg);
void write_benchmark(const BenchmarkResult& result, const ExperimentConfig& cfg,
                     const std::filesystem::path& dir);

struct SweepRow {
  std::string graphon;
  double sigma = 0.0;
  double lambda = 0.0;
  std::size_t trials = 0;
  double mean_mse = 0.0;
  double se_mse = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<BenchmarkRow> failures;
};

/// Mean FANS MSE over trials for every (graphon, sigma, lambda) cell.
SweepResult run_lambda_sweep(const ExperimentConfig& cfg);
void write_sweep(const SweepResult& result, const ExperimentConfig& cfg,
                 const std::filesystem::path& dir);

struct LinkPredictionResult {
  std::vector<PairScore> scores;
  std::vector<int> labels;
  RocCurve roc;
  double lambda = 0.0;
};

/// Leave-one-out scores on sampled pairs and the ROC curve against the observed edges.
LinkPredictionResult run_link_prediction(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                         const MethodSettings& method, std::size_t pairs,
                                         LooMode mode, std::uint64_t seed, unsigned threads);
void write_link_prediction(const LinkPredictionResult& result, const std::string& header,
                           const std::filesystem::path& dir);

/// Resolved configuration plus master seed, as written at the top of every output file.
std::string provenance(const ExperimentConfig& cfg);

}  // namespace fans
