// fans: simulate, estimate and benchmark graphon estimators from the command line.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fans/config.hpp"
#include "fans/dissimilarity.hpp"
#include "fans/experiment.hpp"
#include "fans/io.hpp"
#include "fans/selection.hpp"

namespace {

using namespace fans;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string method;
  std::optional<double> lambda;
  std::optional<double> c0;
  std::optional<unsigned> threads;

  std::vector<std::string> graphons;
  std::optional<std::size_t> n;
  std::optional<int> trials;
  std::string features;
  std::optional<double> sigma;

  std::string edges;
  std::optional<Index> nodes;
  bool one_based = false;
  std::string covariates;
  std::string schema;
  bool impute = false;
  std::optional<std::size_t> pairs;
  std::string mode;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

ExperimentConfig resolve_config(const Options& opt) {
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) cfg = load_experiment_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.trials) cfg.trials = *opt.trials;
  if (!opt.graphons.empty()) cfg.graphon_names = opt.graphons;
  set_network_size(cfg, opt.n.value_or(cfg.n));
  if (!opt.features.empty()) {
    FeatureSpec spec = cfg.features.value_or(FeatureSpec{});
    spec.components.clear();
    for (const auto& id : split(opt.features, ',')) spec.components.push_back(FeatureComponent::parse(id));
    cfg.features = spec;
  }
  if (opt.sigma) {
    if (!cfg.features) throw ConfigError("--sigma needs a feature specification");
    cfg.features->sigma = *opt.sigma;
  }
  if (!opt.method.empty()) {
    std::vector<MethodSettings> chosen;
    for (const auto& name : split(opt.method, ',')) {
      auto it = std::find_if(cfg.methods.begin(), cfg.methods.end(),
                             [&](const MethodSettings& m) { return m.name == name; });
      MethodSettings m = it != cfg.methods.end() ? *it : MethodSettings{};
      m.name = name;
      if (name != "nbs" && name != "fans" && name != "usvt" && name != "sas")
        throw ConfigError("unknown method '" + name + "'");
      chosen.push_back(m);
    }
    cfg.methods = chosen;
  }
  if (cfg.methods.empty()) cfg.methods.push_back(MethodSettings{});
  for (auto& m : cfg.methods) {
    if (opt.c0) m.c0 = *opt.c0;
    if (opt.lambda && m.name == "fans") m.lambda = *opt.lambda;
  }
  if (!opt.mode.empty()) {
    if (opt.mode == "exact") cfg.linkpred_mode = LooMode::kExact;
    else if (opt.mode == "shared") cfg.linkpred_mode = LooMode::kShared;
    else throw ConfigError("--mode must be 'exact' or 'shared'");
  }
  if (opt.pairs) cfg.linkpred_pairs = *opt.pairs;

  if (!opt.out.empty()) {
    cfg.output_dir = opt.out;
  } else if (const char* env = std::getenv("FANS_OUTPUT_DIR"); env && *env) {
    cfg.output_dir = env;
  }
  cfg.validate();
  return cfg;
}

struct Data {
  AdjacencyMatrix a;
  std::optional<FeatureMatrix> x;
  std::optional<ProbabilityMatrix> p;
  std::vector<std::string> feature_names;
  std::uint64_t seed = 0;
  std::string origin;
};

Data load_data(const Options& opt, const ExperimentConfig& cfg) {
  Data d;
  if (!opt.edges.empty()) {
    d.a = io::load_edge_list(opt.edges, io::EdgeListOptions{opt.nodes, opt.one_based});
    d.seed = cfg.seed;
    d.origin = "edges: " + opt.edges;
    if (!opt.covariates.empty()) {
      io::CovariateSchema schema;
      for (const auto& entry : split(opt.schema, ',')) {
        const auto colon = entry.rfind(':');
        if (colon == std::string::npos) throw ConfigError("schema entries look like name:kind");
        schema.columns.emplace_back(entry.substr(0, colon), io::parse_column_kind(entry.substr(colon + 1)));
      }
      if (schema.columns.empty()) throw ConfigError("--covariates needs --schema");
      auto table = io::load_covariates(opt.covariates, schema, io::CovariateOptions{',', opt.impute});
      if (table.features.nodes() != d.a.size())
        throw ConfigError("covariate rows (" + std::to_string(table.features.nodes()) +
                          ") do not match the node count (" + std::to_string(d.a.size()) + ")");
      for (std::size_t r : table.imputed_rows)
        std::cerr << "warning: imputed missing covariates in data row " << r << "\n";
      d.x = table.features;
      d.feature_names = table.column_names;
    }
    return d;
  }
  if (cfg.graphons.empty()) throw ConfigError("no graphon given (use --graphon or a config file)");
  d.seed = trial_seed(cfg.seed, 0);
  const TrialData t = simulate_trial(cfg.graphons.front(), cfg.features ? &*cfg.features : nullptr,
                                     cfg.n, d.seed);
  d.a = t.a;
  d.x = t.x;
  d.p = t.p;
  if (cfg.features)
    for (const auto& c : cfg.features->components) d.feature_names.push_back(c.name());
  d.origin = "simulated: " + cfg.graphons.front().name();
  return d;
}

std::string header_for(const ExperimentConfig& cfg, const Data& d) {
  return provenance(cfg) + "\ndata " + d.origin + "\ndata seed: " + std::to_string(d.seed);
}

int cmd_simulate(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const Data d = load_data(opt, cfg);
  if (!d.p) throw ConfigError("simulate does not read --edges");
  const std::string header = header_for(cfg, d);
  io::write_matrix_csv(cfg.output_dir / "P.csv", d.p->matrix(), header);
  io::write_edge_list(cfg.output_dir / "A.edges", d.a, header);
  if (d.x) io::write_matrix_csv(cfg.output_dir / "X.csv", d.x->matrix(), header);
  std::cout << "nodes=" << d.a.size() << " edges=" << d.a.edge_count() << " -> " << cfg.output_dir.string() << "\n";
  return kExitOk;
}

int cmd_estimate(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const Data d = load_data(opt, cfg);
  const std::string header = header_for(cfg, d);
  std::cout << std::setprecision(6);
  for (const auto& method : cfg.methods) {
    const MethodFit fit = run_method(method, d.a, d.x ? &*d.x : nullptr, d.seed);
    io::write_matrix_csv(cfg.output_dir / ("Phat_" + method.name + ".csv"), fit.estimate.matrix(), header);
    std::cout << method.name;
    if (method.name == "fans") std::cout << " lambda=" << fit.lambda << " kept=" << fit.kept.size();
    if (d.p) {
      const MetricReport m = mse_mae(fit.estimate, *d.p);
      std::cout << " mse=" << m.mse << " mae=" << m.mae;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_cv(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const Data d = load_data(opt, cfg);
  if (!d.x) throw ConfigError("cv needs node features");
  MethodSettings method;
  for (const auto& m : cfg.methods)
    if (m.name == "fans") method = m;
  CvConfig cv = method.cv;
  cv.c0 = method.c0;
  cv.seed = d.seed;
  cv.threads = cfg.threads;
  const CvResult r = cross_validate(d.a, *d.x, cv);
  std::ofstream out = [&] {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream f(cfg.output_dir / "cv.csv");
    if (!f) throw std::runtime_error("cannot write cv.csv");
    return f;
  }();
  out << io::comment_block(header_for(cfg, d)) << std::setprecision(17) << "lambda,mean_loss\n";
  for (std::size_t q = 0; q < cv.grid.size(); ++q) out << cv.grid[q] << ',' << r.mean_loss[q] << '\n';
  std::cout << "lambda_opt=" << r.lambda_opt << "\n";
  return kExitOk;
}

int cmd_screen(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const Data d = load_data(opt, cfg);
  if (!d.x) throw ConfigError("screen needs node features");
  MethodSettings method;
  for (const auto& m : cfg.methods)
    if (m.name == "fans") method = m;
  const ScreenResult r = screen_features(d.a, *d.x, ScreenConfig{method.screen_threshold});
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir / "screen.csv");
  if (!out) throw std::runtime_error("cannot write screen.csv");
  out << io::comment_block(header_for(cfg, d)) << std::setprecision(17) << "feature,tau,kept\n";
  for (std::size_t j = 0; j < r.taus.size(); ++j) {
    const bool kept = std::find(r.kept.begin(), r.kept.end(), static_cast<Index>(j)) != r.kept.end();
    const std::string name = j < d.feature_names.size() ? d.feature_names[j] : "x" + std::to_string(j);
    out << name << ',';
    if (r.taus[j]) out << *r.taus[j];
    out << ',' << (kept ? 1 : 0) << '\n';
    std::cout << name << " tau=" << (r.taus[j] ? std::to_string(*r.taus[j]) : "undefined")
              << (kept ? " kept" : " dropped") << "\n";
  }
  return kExitOk;
}

int cmd_benchmark(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const BenchmarkResult r = run_benchmark(cfg);
  write_benchmark(r, cfg, cfg.output_dir);
  std::cout << std::setprecision(4);
  for (const auto& s : r.summary) {
    std::cout << s.graphon << ' ' << s.method << " mse=" << s.mean_mse << " (" << s.se_mse << ")";
    if (s.p_vs_nbs) std::cout << " p_vs_nbs=" << *s.p_vs_nbs;
    std::cout << "\n";
  }
  for (const auto& row : r.rows)
    if (!row.error.empty())
      std::cerr << "trial " << row.trial << " (" << row.graphon << ", " << row.method
                << ", seed " << row.seed << ") failed: " << row.error << "\n";
  return r.failures ? kExitPartial : kExitOk;
}

int cmd_sweep(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const SweepResult r = run_lambda_sweep(cfg);
  write_sweep(r, cfg, cfg.output_dir);
  for (const auto& f : r.failures)
    std::cerr << "trial " << f.trial << " (" << f.graphon << ", seed " << f.seed
              << ") failed: " << f.error << "\n";
  std::cout << r.rows.size() << " rows -> " << (cfg.output_dir / "sweep.csv").string() << "\n";
  return r.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_linkpred(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt);
  const Data d = load_data(opt, cfg);
  const MethodSettings& method = cfg.methods.front();
  const auto r = run_link_prediction(d.a, d.x ? &*d.x : nullptr, method, cfg.linkpred_pairs,
                                     cfg.linkpred_mode, d.seed, cfg.threads);
  write_link_prediction(r, header_for(cfg, d), cfg.output_dir);
  std::cout << "pairs=" << r.scores.size() << " auc=" << std::setprecision(6) << r.roc.auc << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphon estimation with node features"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&opt](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_path, "YAML experiment configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "Master seed");
    sub->add_option("--out", opt.out, "Output directory (overrides FANS_OUTPUT_DIR and the config)");
    sub->add_option("--method", opt.method, "Comma-separated methods: fans, nbs, usvt, sas");
    sub->add_option("--lambda", opt.lambda, "Fixed feature weight for fans (skips cross-validation)");
    sub->add_option("--c0", opt.c0, "Bandwidth constant");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    sub->add_option("--graphon", opt.graphons, "Graphon name(s): g0..g4");
    sub->add_option("-n,--size", opt.n, "Network size for simulation");
    sub->add_option("--trials", opt.trials, "Trials per graphon");
    sub->add_option("--features", opt.features, "Comma-separated feature components (f1,f2,cos3,...)");
    sub->add_option("--sigma", opt.sigma, "Feature noise level");
  };
  auto data = [&opt](CLI::App* sub) {
    sub->add_option("--edges", opt.edges, "Edge list file (otherwise a network is simulated)");
    sub->add_option("--nodes", opt.nodes, "Node count for the edge list");
    sub->add_flag("--one-based", opt.one_based, "Edge list indices start at 1");
    sub->add_option("--covariates", opt.covariates, "Delimited covariate table with header");
    sub->add_option("--schema", opt.schema, "Covariate columns as name:kind,... (ordinal, categorical, numeric)");
    sub->add_flag("--impute", opt.impute, "Replace missing covariates by the column mean");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    bool reads_data;
  };
  const Command commands[] = {
      {"simulate", "Draw P, A and X from a graphon", cmd_simulate, false},
      {"estimate", "Estimate P from an observed or simulated network", cmd_estimate, true},
      {"cv", "Cross-validate the feature weight lambda", cmd_cv, true},
      {"screen", "Kendall screening of node features", cmd_screen, true},
      {"benchmark", "Monte Carlo comparison of methods", cmd_benchmark, false},
      {"sweep", "MSE over a lambda x sigma grid", cmd_sweep, false},
      {"linkpred", "Leave-one-out link prediction and ROC", cmd_linkpred, true},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    if (c.reads_data) data(sub);
    if (std::string(c.name) == "linkpred") {
      sub->add_option("--pairs", opt.pairs, "Number of node pairs to score");
      sub->add_option("--mode", opt.mode, "exact (default) or shared");
    }
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& [sub, c] : subs)
      if (sub->parsed()) return c->run(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ArgumentError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitConfig;
}
