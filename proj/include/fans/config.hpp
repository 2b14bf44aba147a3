#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fans/evaluation.hpp"
#include "fans/graphon.hpp"
#include "fans/selection.hpp"

namespace YAML {
class Node;
}

namespace fans {

/// One estimator entry of an experiment: "nbs", "fans", "usvt" or "sas".
struct MethodSettings {
  std::string name = "fans";
  double c0 = 1.0;
  bool tie_correction = true;      // fans
  std::optional<double> lambda;    // fans: fixed lambda; cross-validated when absent
  bool screen = true;              // fans: Kendall screening before cross-validation
  double screen_threshold = 0.03;  // fans
  CvConfig cv;                     // fans
  double usvt_eta = 0.01;          // usvt
  std::optional<Index> sas_bins;   // sas: ceil(n / floor(ln n)) when absent
};

struct ExperimentConfig {
  std::vector<std::string> graphon_names;  // as written; resolved per n
  std::vector<GraphonSpec> graphons;       // resolved at `n`
  std::optional<FeatureSpec> features;
  std::size_t n = 200;
  int trials = 1;
  std::vector<MethodSettings> methods;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  unsigned threads = 0;

  std::vector<double> sweep_lambdas = default_lambda_grid();
  std::vector<double> sweep_sigmas = {0.0};

  std::size_t linkpred_pairs = 2000;
  LooMode linkpred_mode = LooMode::kExact;

  void validate() const;
};

GraphonSpec graphon_from_yaml(const YAML::Node& node, std::size_t n);
YAML::Node graphon_to_yaml(const GraphonSpec& spec);
FeatureSpec features_from_yaml(const YAML::Node& node);
YAML::Node features_to_yaml(const FeatureSpec& spec);

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Full resolved configuration as YAML (re-parses to an equal config).
std::string to_yaml_string(const ExperimentConfig& cfg);

/// Re-resolves the graphon list at a new network size (sbm block count follows n).
void set_network_size(ExperimentConfig& cfg, std::size_t n);

}  // namespace fans
