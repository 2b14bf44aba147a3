#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fans/experiment.hpp"
#include "fans/rng.hpp"

using namespace fans;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig small_config() {
  return parse_experiment_config(R"(
experiment: {n: 60, trials: 4, seed: 5, threads: 1}
graphons: [g1, g3]
features: {components: [f1, f2, f3, f4], sigma: 0.3}
methods: [nbs, fans, usvt, sas]
sweep: {lambdas: [0, 0.1, 1], sigmas: [0, 0.3]}
)");
}

}  // namespace

TEST(Simulation, TrialIsDeterministic) {
  FeatureSpec fs{{FeatureComponent::parse("f1")}, 0.3, true};
  const auto a = simulate_trial(GraphonSpec::sine(), &fs, 40, trial_seed(1, 0));
  const auto b = simulate_trial(GraphonSpec::sine(), &fs, 40, trial_seed(1, 0));
  EXPECT_EQ(a.a.matrix(), b.a.matrix());
  EXPECT_EQ(a.x->matrix(), b.x->matrix());
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
}

TEST(Methods, EveryMethodRuns) {
  FeatureSpec fs{{FeatureComponent::parse("f1"), FeatureComponent::parse("f4")}, 0.3, true};
  const auto t = simulate_trial(GraphonSpec::logistic_distance(), &fs, 80, 3);
  for (const char* name : {"nbs", "fans", "usvt", "sas"}) {
    MethodSettings m;
    m.name = name;
    const auto fit = run_method(m, t.a, &*t.x, 3);
    EXPECT_EQ(fit.estimate.size(), 80) << name;
  }
  MethodSettings bogus;
  bogus.name = "sba";
  EXPECT_THROW(run_method(bogus, t.a, nullptr, 1), ConfigError);
}

TEST(Methods, ScreeningAllOutFallsBackToNoFeatures) {
  FeatureSpec fs{{FeatureComponent::parse("gaussian-noise")}, 1.0, true};
  const auto t = simulate_trial(GraphonSpec::sbm(4), &fs, 100, 8);
  MethodSettings m;
  m.screen_threshold = 1.0;  // nothing reaches tau = 1
  const auto fit = run_method(m, t.a, &*t.x, 8);
  EXPECT_TRUE(fit.kept.empty());
  EXPECT_EQ(fit.lambda, 0.0);
  EXPECT_EQ(fit.estimate.matrix(),
            fans_estimate(t.a, EstimatorConfig{0.0, 1.0, true, derive_seed(8, Stream::kEstimator)}).matrix());
}

TEST(Benchmark, SingleTrialSingleMethod) {
  auto cfg = parse_experiment_config("experiment: {n: 40, trials: 1}\ngraphons: [g0]\nmethods: [nbs]\n");
  const auto r = run_benchmark(cfg);
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.summary.size(), 1u);
}

TEST(Benchmark, ReproducibleAcrossThreadCounts) {
  auto cfg = small_config();
  const auto dir = std::filesystem::temp_directory_path() / "fans_bench";
  const auto first = run_benchmark(cfg);
  write_benchmark(first, cfg, dir / "a");
  cfg.threads = 3;
  const auto second = run_benchmark(cfg);
  cfg.threads = 1;  // same embedded configuration in both outputs
  write_benchmark(second, cfg, dir / "b");
  EXPECT_EQ(slurp(dir / "a" / "benchmark_trials.csv"), slurp(dir / "b" / "benchmark_trials.csv"));
  EXPECT_EQ(slurp(dir / "a" / "benchmark_summary.csv"), slurp(dir / "b" / "benchmark_summary.csv"));
  EXPECT_EQ(first.rows.size(), 2u * 4u * 4u);
  const std::string trials = slurp(dir / "a" / "benchmark_trials.csv");
  EXPECT_NE(trials.find("# experiment:"), std::string::npos);
  EXPECT_NE(trials.find("# master seed: 5"), std::string::npos);
  for (const auto& s : first.summary) {
    EXPECT_EQ(s.trials, 4u);
    EXPECT_EQ(s.p_vs_nbs.has_value(), s.method == "fans");
  }
}

TEST(Benchmark, FailuresAreRecordedAndRunContinues) {
  register_graphon("test-flaky", [](double u, double v) { return u + v > 1.99 ? 2.0 : 0.3; });
  auto cfg = parse_experiment_config(
      "experiment: {n: 200, trials: 6, seed: 1}\ngraphons: [test-flaky]\nmethods: [nbs]\n");
  const auto r = run_benchmark(cfg);
  EXPECT_GT(r.failures, 0u);
  EXPECT_LT(r.failures, 6u);
  for (const auto& row : r.rows)
    if (!row.error.empty()) EXPECT_NE(row.error.find("left [0, 1]"), std::string::npos);
}

TEST(Sweep, GridShapeAndDegenerateLambda) {
  auto cfg = small_config();
  cfg.trials = 2;
  const auto r = run_lambda_sweep(cfg);
  EXPECT_EQ(r.rows.size(), 2u * 2u * 3u);
  EXPECT_TRUE(r.failures.empty());
  cfg.sweep_lambdas = {0.0};
  const auto base = run_lambda_sweep(cfg);
  EXPECT_EQ(base.rows.size(), 4u);
  for (std::size_t k = 0; k < base.rows.size(); ++k) EXPECT_EQ(base.rows[k].mean_mse, r.rows[3 * k].mean_mse);
}

TEST(Sweep, FeaturesImproveLogisticDistance) {
  auto cfg = parse_experiment_config(R"(
experiment: {n: 200, trials: 20, seed: 11}
graphons: [g3]
features: {components: [f1, f2, f3, f4], sigma: 0}
sweep: {lambdas: [0, 0.01, 0.05, 0.1, 0.5, 1], sigmas: [0]}
)");
  const auto r = run_lambda_sweep(cfg);
  double best = r.rows[1].mean_mse;
  for (std::size_t k = 2; k < r.rows.size(); ++k) best = std::min(best, r.rows[k].mean_mse);
  EXPECT_LT(best, r.rows[0].mean_mse);
}

TEST(LinkPredictionRunner, ProducesRoc) {
  FeatureSpec fs{{FeatureComponent::parse("f1")}, 0.3, true};
  const auto t = simulate_trial(GraphonSpec::sbm(3), &fs, 60, 2);
  MethodSettings m;
  m.lambda = 0.1;
  const auto r = run_link_prediction(t.a, &*t.x, m, 300, LooMode::kExact, 2, 2);
  EXPECT_EQ(r.scores.size(), 300u);
  EXPECT_GT(r.roc.auc, 0.5);
  const auto dir = std::filesystem::temp_directory_path() / "fans_lp";
  write_link_prediction(r, "seed: 2", dir);
  EXPECT_NE(slurp(dir / "roc.csv").find("# auc="), std::string::npos);
}
