#include "fans/config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace fans {
namespace {

template <typename T>
T get_or(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node v = node[key];
  return v ? v.as<T>() : fallback;
}

void reject_unknown_keys(const YAML::Node& node, std::initializer_list<std::string_view> known,
                         const std::string& where) {
  if (!node.IsMap()) return;
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

MethodSettings method_from_yaml(const YAML::Node& node) {
  MethodSettings m;
  if (node.IsScalar()) {
    m.name = node.as<std::string>();
  } else {
    reject_unknown_keys(node,
                        {"name", "c0", "tie_correction", "lambda", "screen", "screen_threshold",
                         "cv", "eta", "bins"},
                        "method");
    m.name = node["name"].as<std::string>();
    m.c0 = get_or(node, "c0", m.c0);
    m.tie_correction = get_or(node, "tie_correction", m.tie_correction);
    if (node["lambda"]) m.lambda = node["lambda"].as<double>();
    m.screen = get_or(node, "screen", m.screen);
    m.screen_threshold = get_or(node, "screen_threshold", m.screen_threshold);
    if (const YAML::Node cv = node["cv"]) {
      reject_unknown_keys(cv, {"grid", "repeats", "validation_fraction"}, "cv");
      if (cv["grid"]) m.cv.grid = cv["grid"].as<std::vector<double>>();
      m.cv.repeats = get_or(cv, "repeats", m.cv.repeats);
      m.cv.validation_fraction = get_or(cv, "validation_fraction", m.cv.validation_fraction);
    }
    m.usvt_eta = get_or(node, "eta", m.usvt_eta);
    if (node["bins"]) m.sas_bins = node["bins"].as<Index>();
  }
  if (m.name != "nbs" && m.name != "fans" && m.name != "usvt" && m.name != "sas")
    throw ConfigError("unknown method '" + m.name + "'");
  m.cv.c0 = m.c0;
  return m;
}

YAML::Node method_to_yaml(const MethodSettings& m) {
  YAML::Node node;
  node["name"] = m.name;
  if (m.name == "nbs" || m.name == "fans") node["c0"] = m.c0;
  if (m.name == "fans") {
    node["tie_correction"] = m.tie_correction;
    if (m.lambda) node["lambda"] = *m.lambda;
    node["screen"] = m.screen;
    node["screen_threshold"] = m.screen_threshold;
    YAML::Node cv;
    cv["grid"] = m.cv.grid;
    cv["grid"].SetStyle(YAML::EmitterStyle::Flow);
    cv["repeats"] = m.cv.repeats;
    cv["validation_fraction"] = m.cv.validation_fraction;
    node["cv"] = cv;
  }
  if (m.name == "usvt") node["eta"] = m.usvt_eta;
  if (m.name == "sas" && m.sas_bins) node["bins"] = *m.sas_bins;
  return node;
}

std::string kind_name(GraphonKind kind) {
  switch (kind) {
    case GraphonKind::kUniformSum: return "uniform-sum";
    case GraphonKind::kSbm: return "sbm";
    case GraphonKind::kSine: return "sine";
    case GraphonKind::kLogisticDistance: return "logistic-distance";
    case GraphonKind::kOscillating: return "oscillating";
    case GraphonKind::kConstant: return "constant";
    case GraphonKind::kPiecewiseConstant: return "piecewise-constant";
    case GraphonKind::kCustom: return "custom";
  }
  return "unknown";
}

ExperimentConfig from_root(const YAML::Node& root) {
  ExperimentConfig cfg;
  reject_unknown_keys(root,
                      {"experiment", "graphon", "graphons", "features", "methods", "sweep", "linkpred"},
                      "config");
  if (const YAML::Node e = root["experiment"]) {
    reject_unknown_keys(e, {"n", "trials", "seed", "threads", "output_dir"}, "experiment");
    cfg.n = get_or(e, "n", cfg.n);
    cfg.trials = get_or(e, "trials", cfg.trials);
    cfg.seed = get_or(e, "seed", cfg.seed);
    cfg.threads = get_or(e, "threads", cfg.threads);
    if (e["output_dir"]) cfg.output_dir = e["output_dir"].as<std::string>();
  }
  auto add_graphon = [&](const YAML::Node& g) {
    YAML::Emitter out;
    out << YAML::Flow << g;
    cfg.graphon_names.emplace_back(out.c_str());
  };
  if (root["graphon"]) add_graphon(root["graphon"]);
  if (const YAML::Node gs = root["graphons"]) {
    if (!gs.IsSequence()) throw ConfigError("'graphons' must be a list");
    for (const auto& g : gs) add_graphon(g);
  }
  if (root["features"]) cfg.features = features_from_yaml(root["features"]);
  if (const YAML::Node ms = root["methods"]) {
    if (!ms.IsSequence()) throw ConfigError("'methods' must be a list");
    for (const auto& m : ms) cfg.methods.push_back(method_from_yaml(m));
  }
  if (const YAML::Node s = root["sweep"]) {
    reject_unknown_keys(s, {"lambdas", "sigmas"}, "sweep");
    if (s["lambdas"]) cfg.sweep_lambdas = s["lambdas"].as<std::vector<double>>();
    if (s["sigmas"]) cfg.sweep_sigmas = s["sigmas"].as<std::vector<double>>();
  }
  if (const YAML::Node l = root["linkpred"]) {
    reject_unknown_keys(l, {"pairs", "mode"}, "linkpred");
    cfg.linkpred_pairs = get_or(l, "pairs", cfg.linkpred_pairs);
    const auto mode = get_or<std::string>(l, "mode", "exact");
    if (mode == "exact") cfg.linkpred_mode = LooMode::kExact;
    else if (mode == "shared") cfg.linkpred_mode = LooMode::kShared;
    else throw ConfigError("linkpred mode must be 'exact' or 'shared'");
  }
  set_network_size(cfg, cfg.n);
  for (auto& m : cfg.methods) m.cv.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

GraphonSpec graphon_from_yaml(const YAML::Node& node, std::size_t n) {
  try {
    if (node.IsScalar()) return graphon_by_name(node.as<std::string>(), n);
    if (!node.IsMap()) throw ConfigError("graphon must be a name or a map");
    reject_unknown_keys(node, {"kind", "blocks", "level", "breakpoints", "values", "id"}, "graphon");
    const auto kind = node["kind"].as<std::string>();
    if (kind == "sbm" || kind == "g1")
      return GraphonSpec::sbm(node["blocks"] ? node["blocks"].as<int>() : sbm_blocks_for(n));
    if (kind == "constant") return GraphonSpec::constant(node["level"].as<double>());
    if (kind == "piecewise-constant") {
      const auto breaks = node["breakpoints"].as<std::vector<double>>();
      const auto rows = node["values"].as<std::vector<std::vector<double>>>();
      Matrix values(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw ConfigError("ragged piecewise-constant table");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
          values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
      }
      return GraphonSpec::piecewise_constant(breaks, values);
    }
    if (kind == "custom") {
      GraphonSpec spec = GraphonSpec::custom(node["id"].as<std::string>());
      spec.validate();
      return spec;
    }
    return graphon_by_name(kind, n);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("graphon: ") + e.what());
  }
}

YAML::Node graphon_to_yaml(const GraphonSpec& spec) {
  YAML::Node node;
  node["kind"] = kind_name(spec.kind);
  switch (spec.kind) {
    case GraphonKind::kSbm: node["blocks"] = spec.blocks; break;
    case GraphonKind::kConstant: node["level"] = spec.level; break;
    case GraphonKind::kPiecewiseConstant: {
      node["breakpoints"] = spec.breakpoints;
      YAML::Node rows;
      for (Index i = 0; i < spec.values.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(spec.values.cols()));
        for (Index j = 0; j < spec.values.cols(); ++j) row[static_cast<std::size_t>(j)] = spec.values(i, j);
        rows.push_back(row);
      }
      node["values"] = rows;
      break;
    }
    case GraphonKind::kCustom: node["id"] = spec.custom_id; break;
    default: break;
  }
  return node;
}

FeatureSpec features_from_yaml(const YAML::Node& node) {
  try {
    reject_unknown_keys(node, {"components", "sigma", "standardized"}, "features");
    FeatureSpec spec;
    for (const auto& id : node["components"].as<std::vector<std::string>>())
      spec.components.push_back(FeatureComponent::parse(id));
    spec.sigma = get_or(node, "sigma", spec.sigma);
    spec.standardized = get_or(node, "standardized", spec.standardized);
    spec.validate();
    return spec;
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("features: ") + e.what());
  }
}

YAML::Node features_to_yaml(const FeatureSpec& spec) {
  YAML::Node node;
  std::vector<std::string> ids;
  for (const auto& c : spec.components) ids.push_back(c.name());
  node["components"] = ids;
  node["components"].SetStyle(YAML::EmitterStyle::Flow);
  node["sigma"] = spec.sigma;
  node["standardized"] = spec.standardized;
  return node;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw ConfigError("experiment n must be positive");
  if (trials < 1) throw ConfigError("experiment trials must be at least 1");
  for (const auto& g : graphons) g.validate();
  if (features) features->validate();
  for (const auto& m : methods) {
    if (!(m.c0 > 0.0)) throw ConfigError("method c0 must be positive");
    if (m.lambda && !(*m.lambda >= 0.0)) throw ConfigError("method lambda must be >= 0");
    if (m.name == "usvt" && !(m.usvt_eta > 0.0)) throw ConfigError("usvt eta must be positive");
  }
  for (double l : sweep_lambdas)
    if (!(l >= 0.0)) throw ConfigError("sweep lambdas must be >= 0");
  for (double s : sweep_sigmas)
    if (!(s >= 0.0)) throw ConfigError("sweep sigmas must be >= 0");
}

void set_network_size(ExperimentConfig& cfg, std::size_t n) {
  cfg.n = n;
  cfg.graphons.clear();
  for (const auto& text : cfg.graphon_names) cfg.graphons.push_back(graphon_from_yaml(YAML::Load(text), n));
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  try {
    return from_root(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str());
}

std::string to_yaml_string(const ExperimentConfig& cfg) {
  YAML::Node root;
  root["experiment"]["n"] = cfg.n;
  root["experiment"]["trials"] = cfg.trials;
  root["experiment"]["seed"] = cfg.seed;
  root["experiment"]["threads"] = cfg.threads;
  root["experiment"]["output_dir"] = cfg.output_dir.string();
  for (const auto& g : cfg.graphons) root["graphons"].push_back(graphon_to_yaml(g));
  if (cfg.features) root["features"] = features_to_yaml(*cfg.features);
  for (const auto& m : cfg.methods) root["methods"].push_back(method_to_yaml(m));
  root["sweep"]["lambdas"] = cfg.sweep_lambdas;
  root["sweep"]["lambdas"].SetStyle(YAML::EmitterStyle::Flow);
  root["sweep"]["sigmas"] = cfg.sweep_sigmas;
  root["sweep"]["sigmas"].SetStyle(YAML::EmitterStyle::Flow);
  root["linkpred"]["pairs"] = cfg.linkpred_pairs;
  root["linkpred"]["mode"] = cfg.linkpred_mode == LooMode::kExact ? "exact" : "shared";
  YAML::Emitter out;
  out << root;
  return out.c_str();
}

}  // namespace fans
