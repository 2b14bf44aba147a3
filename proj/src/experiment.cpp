#include "fans/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "fans/baselines.hpp"
#include "fans/dissimilarity.hpp"
#include "fans/estimator.hpp"
#include "fans/io.hpp"
#include "fans/parallel.hpp"
#include "fans/rng.hpp"
#include "fans/selection.hpp"

namespace fans {
namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe out;
  if (v.empty()) return out;
  const double m = static_cast<double>(v.size());
  for (double x : v) out.mean += x;
  out.mean /= m;
  if (v.size() < 2) return out;
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / (m - 1.0) / m);
  return out;
}

std::ofstream open_csv(const std::filesystem::path& path, const std::string& header) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << io::comment_block(header) << std::setprecision(17);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return derive_seed(master, Stream::kTrial, trial);
}

TrialData simulate_trial(const GraphonSpec& graphon, const FeatureSpec* features, std::size_t n,
                         std::uint64_t seed) {
  TrialData t;
  t.seed = seed;
  t.labels = sample_labels(n, seed);
  t.p = compute_P(graphon, t.labels);
  t.a = sample_adjacency(t.p, seed);
  if (features && !features->components.empty()) t.x = sample_features(*features, t.labels, seed);
  return t;
}

MethodFit run_method(const MethodSettings& method, const AdjacencyMatrix& a,
                     const FeatureMatrix* x, std::uint64_t seed) {
  MethodFit fit;
  if (method.name == "nbs") {
    fit.estimate = nbs_estimate(a, method.c0);
    return fit;
  }
  if (method.name == "usvt") {
    fit.estimate = usvt_estimate(a, UsvtConfig{method.usvt_eta});
    return fit;
  }
  if (method.name == "sas") {
    SasConfig sas = SasConfig::for_size(a.size());
    if (method.sas_bins) sas.bins = *method.sas_bins;
    fit.estimate = sas_estimate(a, sas);
    return fit;
  }
  if (method.name != "fans") throw ConfigError("unknown method '" + method.name + "'");

  EstimatorConfig est{0.0, method.c0, method.tie_correction, derive_seed(seed, Stream::kEstimator)};
  std::optional<FeatureMatrix> used;
  if (x && x->features() > 0) {
    if (method.screen) {
      fit.kept = screen_features(a, *x, ScreenConfig{method.screen_threshold}).kept;
    } else {
      for (Index j = 0; j < x->features(); ++j) fit.kept.push_back(j);
    }
    if (!fit.kept.empty()) used = x->select_columns(fit.kept);
  }
  if (used) {
    if (method.lambda) {
      est.lambda = *method.lambda;
    } else {
      CvConfig cv = method.cv;
      cv.c0 = method.c0;
      cv.seed = derive_seed(seed, Stream::kCrossValidation);
      cv.threads = 1;
      est.lambda = cross_validate(a, *used, cv).lambda_opt;
    }
  }
  fit.lambda = est.lambda;
  fit.estimate = fans_estimate(a, used ? &*used : nullptr, est);
  return fit;
}

std::string provenance(const ExperimentConfig& cfg) {
  return to_yaml_string(cfg) + "\nmaster seed: " + std::to_string(cfg.seed);
}

BenchmarkResult run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.graphons.empty()) throw ConfigError("benchmark needs at least one graphon");
  if (cfg.methods.empty()) throw ConfigError("benchmark needs at least one method");
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t methods = cfg.methods.size();
  const std::size_t tasks = cfg.graphons.size() * trials;
  const FeatureSpec* features = cfg.features ? &*cfg.features : nullptr;

  BenchmarkResult result;
  result.rows.resize(tasks * methods);
  parallel_for(tasks, cfg.threads, [&](std::size_t task) {
    const std::size_t g = task / trials;
    const std::size_t trial = task % trials;
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    const GraphonSpec& graphon = cfg.graphons[g];
    std::optional<TrialData> data;
    std::string data_error;
    try {
      data = simulate_trial(graphon, features, cfg.n, seed);
    } catch (const std::exception& e) {
      data_error = e.what();
    }
    for (std::size_t k = 0; k < methods; ++k) {
      BenchmarkRow& row = result.rows[task * methods + k];
      row.graphon = graphon.name();
      row.method = cfg.methods[k].name;
      row.trial = trial;
      row.seed = seed;
      if (!data) {
        row.error = data_error;
        continue;
      }
      try {
        const MethodFit fit =
            run_method(cfg.methods[k], data->a, data->x ? &*data->x : nullptr, seed);
        const MetricReport m = mse_mae(fit.estimate, data->p);
        row.mse = m.mse;
        row.mae = m.mae;
        row.lambda = fit.lambda;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  });

  for (const auto& row : result.rows)
    if (!row.error.empty()) ++result.failures;

  const auto nbs = std::find_if(cfg.methods.begin(), cfg.methods.end(),
                                [](const MethodSettings& m) { return m.name == "nbs"; });
  for (std::size_t g = 0; g < cfg.graphons.size(); ++g) {
    for (std::size_t k = 0; k < methods; ++k) {
      SummaryRow s;
      s.graphon = cfg.graphons[g].name();
      s.method = cfg.methods[k].name;
      std::vector<double> mse, mae, paired_a, paired_b;
      for (std::size_t t = 0; t < trials; ++t) {
        const BenchmarkRow& row = result.rows[(g * trials + t) * methods + k];
        if (!row.error.empty()) continue;
        mse.push_back(row.mse);
        mae.push_back(row.mae);
        if (nbs != cfg.methods.end()) {
          const auto j = static_cast<std::size_t>(nbs - cfg.methods.begin());
          const BenchmarkRow& ref = result.rows[(g * trials + t) * methods + j];
          if (ref.error.empty()) {
            paired_a.push_back(row.mse);
            paired_b.push_back(ref.mse);
          }
        }
      }
      s.trials = mse.size();
      const MeanSe m1 = mean_se(mse), m2 = mean_se(mae);
      s.mean_mse = m1.mean;
      s.se_mse = m1.se;
      s.mean_mae = m2.mean;
      s.se_mae = m2.se;
      if (s.method == "fans" && paired_a.size() >= 2) s.p_vs_nbs = paired_t_test(paired_a, paired_b);
      result.summary.push_back(s);
    }
  }
  return result;
}

void write_benchmark(const BenchmarkResult& result, const ExperimentConfig& cfg,
                     const std::filesystem::path& dir) {
  const std::string header = provenance(cfg);
  {
    auto out = open_csv(dir / "benchmark_trials.csv", header);
    out << "graphon,method,trial,seed,mse,mae,lambda,error\n";
    for (const auto& r : result.rows)
      out << r.graphon << ',' << r.method << ',' << r.trial << ',' << r.seed << ','
          << (r.error.empty() ? r.mse : NAN) << ',' << (r.error.empty() ? r.mae : NAN) << ','
          << r.lambda << ',' << csv_field(r.error) << '\n';
  }
  auto out = open_csv(dir / "benchmark_summary.csv", header);
  out << "graphon,method,trials,mean_mse,se_mse,mean_mae,se_mae,p_vs_nbs\n";
  for (const auto& s : result.summary) {
    out << s.graphon << ',' << s.method << ',' << s.trials << ',' << s.mean_mse << ','
        << s.se_mse << ',' << s.mean_mae << ',' << s.se_mae << ',';
    if (s.p_vs_nbs) out << *s.p_vs_nbs;
    out << '\n';
  }
}

SweepResult run_lambda_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.graphons.empty()) throw ConfigError("sweep needs at least one graphon");
  if (!cfg.features || cfg.features->components.empty())
    throw ConfigError("sweep needs a feature specification");
  if (cfg.sweep_lambdas.empty() || cfg.sweep_sigmas.empty())
    throw ConfigError("sweep needs nonempty lambda and sigma grids");
  MethodSettings method;
  for (const auto& m : cfg.methods)
    if (m.name == "fans") method = m;

  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t sigmas = cfg.sweep_sigmas.size();
  const std::size_t lambdas = cfg.sweep_lambdas.size();
  const std::size_t tasks = cfg.graphons.size() * sigmas * trials;
  std::vector<std::vector<double>> mse(tasks);  // per task, one MSE per lambda
  std::vector<std::string> errors(tasks);

  parallel_for(tasks, cfg.threads, [&](std::size_t task) {
    const std::size_t g = task / (sigmas * trials);
    const std::size_t s = (task / trials) % sigmas;
    const std::size_t trial = task % trials;
    const std::uint64_t seed = trial_seed(cfg.seed, trial);
    try {
      FeatureSpec features = *cfg.features;
      features.sigma = cfg.sweep_sigmas[s];
      const TrialData data = simulate_trial(cfg.graphons[g], &features, cfg.n, seed);
      const auto d0sq = d0_hat(
          data.a, TieBreakConfig{method.tie_correction, derive_seed(seed, Stream::kEstimator)});
      const auto ssq = s_hat(*data.x);
      for (double lambda : cfg.sweep_lambdas) {
        const auto fit = estimate_from_dissimilarity(data.a, d0sq, &ssq, lambda, method.c0);
        mse[task].push_back(mse_mae(fit, data.p).mse);
      }
    } catch (const std::exception& e) {
      errors[task] = e.what();
    }
  });

  SweepResult result;
  for (std::size_t g = 0; g < cfg.graphons.size(); ++g) {
    for (std::size_t s = 0; s < sigmas; ++s) {
      for (std::size_t l = 0; l < lambdas; ++l) {
        std::vector<double> values;
        for (std::size_t t = 0; t < trials; ++t) {
          const std::size_t task = (g * sigmas + s) * trials + t;
          if (errors[task].empty()) values.push_back(mse[task][l]);
        }
        const MeanSe m = mean_se(values);
        result.rows.push_back({cfg.graphons[g].name(), cfg.sweep_sigmas[s], cfg.sweep_lambdas[l],
                               values.size(), m.mean, m.se});
      }
      for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t task = (g * sigmas + s) * trials + t;
        if (errors[task].empty()) continue;
        BenchmarkRow failure;
        failure.graphon = cfg.graphons[g].name();
        failure.method = "fans";
        failure.trial = t;
        failure.seed = trial_seed(cfg.seed, t);
        failure.error = errors[task];
        result.failures.push_back(failure);
      }
    }
  }
  return result;
}

void write_sweep(const SweepResult& result, const ExperimentConfig& cfg,
                 const std::filesystem::path& dir) {
  auto out = open_csv(dir / "sweep.csv", provenance(cfg));
  out << "graphon,sigma,lambda,trials,mean_mse,se_mse\n";
  for (const auto& r : result.rows)
    out << r.graphon << ',' << r.sigma << ',' << r.lambda << ',' << r.trials << ','
        << r.mean_mse << ',' << r.se_mse << '\n';
  for (const auto& f : result.failures)
    out << "# failed: graphon=" << f.graphon << " trial=" << f.trial << " seed=" << f.seed
        << " error=" << f.error << '\n';
}

LinkPredictionResult run_link_prediction(const AdjacencyMatrix& a, const FeatureMatrix* x,
                                         const MethodSettings& method, std::size_t pairs,
                                         LooMode mode, std::uint64_t seed, unsigned threads) {
  if (method.name != "fans" && method.name != "nbs")
    throw ConfigError("link prediction supports the fans and nbs methods");
  LinkPredictionResult result;
  LinkPredictionConfig cfg;
  cfg.mode = mode;
  cfg.threads = threads;
  cfg.estimator.c0 = method.c0;
  std::optional<FeatureMatrix> used;
  if (method.name == "nbs") {
    cfg.estimator.tie_correction = false;
  } else {
    cfg.estimator.tie_correction = method.tie_correction;
    cfg.estimator.seed = derive_seed(seed, Stream::kEstimator);
    if (x && x->features() > 0) {
      // lambda and the feature subset are chosen once on the full graph
      const MethodFit fit = run_method(method, a, x, seed);
      if (!fit.kept.empty()) used = x->select_columns(fit.kept);
      cfg.estimator.lambda = fit.lambda;
    }
  }
  result.lambda = cfg.estimator.lambda;
  const auto chosen = sample_pairs(a, pairs, seed);
  result.scores = loo_link_predict(a, used ? &*used : nullptr, cfg, chosen);
  std::vector<double> scores;
  for (const auto& s : result.scores) {
    scores.push_back(s.score);
    result.labels.push_back(a(s.i, s.j) != 0.0 ? 1 : 0);
  }
  result.roc = roc_auc(scores, result.labels);
  return result;
}

void write_link_prediction(const LinkPredictionResult& result, const std::string& header,
                           const std::filesystem::path& dir) {
  {
    auto out = open_csv(dir / "linkpred_scores.csv", header);
    out << "i,j,score,edge\n";
    for (std::size_t k = 0; k < result.scores.size(); ++k)
      out << result.scores[k].i << ',' << result.scores[k].j << ',' << result.scores[k].score
          << ',' << result.labels[k] << '\n';
  }
  io::write_roc_csv(dir / "roc.csv", result.roc, header);
}

}  // namespace fans
