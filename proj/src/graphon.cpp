#include "fans/graphon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <shared_mutex>

#include <boost/math/distributions/normal.hpp>

#include "fans/rng.hpp"

namespace fans {
namespace {

using std::numbers::pi;

template <typename Fn>
class Registry {
 public:
  void put(const std::string& id, Fn fn) {
    std::unique_lock lock(mutex_);
    entries_[id] = std::move(fn);
  }
  Fn get(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(id);
    if (it == entries_.end()) throw ConfigError("unknown custom id '" + id + "'");
    return it->second;
  }
  bool contains(const std::string& id) const {
    std::shared_lock lock(mutex_);
    return entries_.contains(id);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, Fn> entries_;
};

Registry<std::function<double(double, double)>>& graphon_registry() {
  static Registry<std::function<double(double, double)>> r;
  return r;
}

Registry<std::function<double(double)>>& feature_registry() {
  static Registry<std::function<double(double)>> r;
  return r;
}

// Left-closed interval index; the last interval also holds its right end.
std::size_t interval_of(const std::vector<double>& breaks, double u) {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), u);
  auto idx = static_cast<std::size_t>(std::distance(breaks.begin(), it));
  return std::clamp<std::size_t>(idx, 1, breaks.size() - 1) - 1;
}

int sbm_block(int blocks, double u) {
  return std::min(static_cast<int>(std::floor(u * blocks)), blocks - 1);
}

}  // namespace

GraphonSpec GraphonSpec::uniform_sum() { return {}; }

GraphonSpec GraphonSpec::sbm(int blocks) {
  GraphonSpec s;
  s.kind = GraphonKind::kSbm;
  s.blocks = blocks;
  s.validate();
  return s;
}

GraphonSpec GraphonSpec::sine() {
  GraphonSpec s;
  s.kind = GraphonKind::kSine;
  return s;
}

GraphonSpec GraphonSpec::logistic_distance() {
  GraphonSpec s;
  s.kind = GraphonKind::kLogisticDistance;
  return s;
}

GraphonSpec GraphonSpec::oscillating() {
  GraphonSpec s;
  s.kind = GraphonKind::kOscillating;
  return s;
}

GraphonSpec GraphonSpec::constant(double level) {
  GraphonSpec s;
  s.kind = GraphonKind::kConstant;
  s.level = level;
  s.validate();
  return s;
}

GraphonSpec GraphonSpec::piecewise_constant(std::vector<double> breakpoints, Matrix values) {
  GraphonSpec s;
  s.kind = GraphonKind::kPiecewiseConstant;
  s.breakpoints = std::move(breakpoints);
  s.values = std::move(values);
  s.validate();
  return s;
}

GraphonSpec GraphonSpec::custom(std::string id) {
  GraphonSpec s;
  s.kind = GraphonKind::kCustom;
  s.custom_id = std::move(id);
  return s;
}

std::string GraphonSpec::name() const {
  switch (kind) {
    case GraphonKind::kUniformSum: return "g0";
    case GraphonKind::kSbm: return "g1";
    case GraphonKind::kSine: return "g2";
    case GraphonKind::kLogisticDistance: return "g3";
    case GraphonKind::kOscillating: return "g4";
    case GraphonKind::kConstant: return "constant";
    case GraphonKind::kPiecewiseConstant: return "piecewise-constant";
    case GraphonKind::kCustom: return custom_id;
  }
  return "unknown";
}

void GraphonSpec::validate() const {
  switch (kind) {
    case GraphonKind::kSbm:
      if (blocks < 1) throw ConfigError("sbm graphon needs at least one block");
      break;
    case GraphonKind::kConstant:
      if (!(level >= 0.0 && level <= 1.0)) throw ConfigError("constant level must lie in [0, 1]");
      break;
    case GraphonKind::kPiecewiseConstant: {
      if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
        throw ConfigError("piecewise-constant breakpoints must start at 0 and end at 1");
      for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
          throw ConfigError("piecewise-constant breakpoints must be strictly increasing");
      const auto k = static_cast<Index>(breakpoints.size() - 1);
      if (values.rows() != k || values.cols() != k)
        throw ConfigError("piecewise-constant table must be K x K for K intervals");
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
          if (!(values(i, j) >= 0.0 && values(i, j) <= 1.0))
            throw ConfigError("piecewise-constant values must lie in [0, 1]");
          if (values(i, j) != values(j, i))
            throw ConfigError("piecewise-constant table must be symmetric");
        }
      break;
    }
    case GraphonKind::kCustom:
      if (!graphon_registry().contains(custom_id))
        throw ConfigError("unknown custom graphon '" + custom_id + "'");
      break;
    default:
      break;
  }
}

int sbm_blocks_for(std::size_t n) {
  if (n < 3) return 1;
  return std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(n)))));
}

GraphonSpec graphon_by_name(std::string_view name, std::size_t n) {
  if (name == "g0" || name == "uniform-sum") return GraphonSpec::uniform_sum();
  if (name == "g1" || name == "sbm") return GraphonSpec::sbm(sbm_blocks_for(n));
  if (name == "g2" || name == "sine") return GraphonSpec::sine();
  if (name == "g3" || name == "logistic-distance") return GraphonSpec::logistic_distance();
  if (name == "g4" || name == "oscillating") return GraphonSpec::oscillating();
  GraphonSpec custom = GraphonSpec::custom(std::string(name));
  custom.validate();
  return custom;
}

void register_graphon(const std::string& id, std::function<double(double, double)> w) {
  graphon_registry().put(id, std::move(w));
}

double eval_graphon(const GraphonSpec& spec, double u, double v) {
  switch (spec.kind) {
    case GraphonKind::kUniformSum:
      return (u + v) / 2.0;
    case GraphonKind::kSbm: {
      const int bu = sbm_block(spec.blocks, u);
      if (bu != sbm_block(spec.blocks, v)) return 0.3 / (spec.blocks + 1);
      return static_cast<double>(bu + 1) / (spec.blocks + 1);
    }
    case GraphonKind::kSine:
      return 0.5 * std::sin(5.0 * pi * (u + v - 1.0) + 1.0) + 0.5;
    case GraphonKind::kLogisticDistance:
      return 1.0 - 1.0 / (1.0 + std::exp(15.0 * std::pow(0.8 * std::abs(u - v), 0.8) - 0.1));
    case GraphonKind::kOscillating: {
      const double r = u * u + v * v;
      // r cos(1/r) -> 0 as r -> 0
      if (r == 0.0) return 0.15;
      return r / 3.0 * std::cos(1.0 / r) + 0.15;
    }
    case GraphonKind::kConstant:
      return spec.level;
    case GraphonKind::kPiecewiseConstant:
      return spec.values(static_cast<Index>(interval_of(spec.breakpoints, u)),
                         static_cast<Index>(interval_of(spec.breakpoints, v)));
    case GraphonKind::kCustom: {
      const double w =
          graphon_registry().get(spec.custom_id)(std::min(u, v), std::max(u, v));
      if (!(w >= 0.0 && w <= 1.0))
        throw ConfigError("custom graphon '" + spec.custom_id + "' left [0, 1]");
      return w;
    }
  }
  throw ConfigError("unknown graphon kind");
}

FeatureComponent FeatureComponent::parse(std::string_view id) {
  FeatureComponent c;
  if (id == "f1") return c;
  if (id == "f2") { c.kind = Kind::kF2; return c; }
  if (id == "f3") { c.kind = Kind::kF3; return c; }
  if (id == "f4") { c.kind = Kind::kF4; return c; }
  if (id == "gaussian-noise") { c.kind = Kind::kGaussianNoise; return c; }
  if (id.starts_with("cos") && id.size() > 3) {
    int h = 0;
    auto [ptr, ec] = std::from_chars(id.data() + 3, id.data() + id.size(), h);
    if (ec == std::errc() && ptr == id.data() + id.size()) {
      if (h < 1 || h > 30) throw ConfigError("cosine harmonic must be in [1, 30]");
      c.kind = Kind::kCosine;
      c.harmonic = h;
      return c;
    }
  }
  c.kind = Kind::kCustom;
  c.custom_id = std::string(id);
  if (!feature_registry().contains(c.custom_id))
    throw ConfigError("unknown feature component '" + c.custom_id + "'");
  return c;
}

std::string FeatureComponent::name() const {
  switch (kind) {
    case Kind::kF1: return "f1";
    case Kind::kF2: return "f2";
    case Kind::kF3: return "f3";
    case Kind::kF4: return "f4";
    case Kind::kCosine: return "cos" + std::to_string(harmonic);
    case Kind::kGaussianNoise: return "gaussian-noise";
    case Kind::kCustom: return custom_id;
  }
  return "unknown";
}

void register_feature(const std::string& id, std::function<double(double)> f) {
  feature_registry().put(id, std::move(f));
}

void FeatureSpec::validate() const {
  if (components.empty()) throw ConfigError("feature spec needs at least one component");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("feature noise sigma must be >= 0");
}

double eval_feature(const FeatureComponent& component, double u) {
  using K = FeatureComponent::Kind;
  switch (component.kind) {
    case K::kF1: {
      const double w = 1.0 - u;
      return std::cos(2.0 * pi * w * w);
    }
    case K::kF2:
      return 10.0 * u * u - 12.0 * u + 5.0;
    case K::kF3:
      return std::cos(pi * u);
    case K::kF4: {
      static const boost::math::normal standard;
      if (u <= 0.0) return -std::numeric_limits<double>::infinity();
      if (u >= 1.0) return std::numeric_limits<double>::infinity();
      return boost::math::quantile(standard, u);
    }
    case K::kCosine:
      return std::cos(std::ldexp(1.0, component.harmonic - 1) * pi * u);
    case K::kGaussianNoise:
      throw ArgumentError("gaussian-noise has no deterministic value");
    case K::kCustom:
      return feature_registry().get(component.custom_id)(u);
  }
  throw ConfigError("unknown feature kind");
}

double sd_estimate(const FeatureComponent& component) {
  if (!component.deterministic())
    throw ArgumentError("sd_estimate: gaussian-noise is not a deterministic component");

  const bool cacheable = component.kind != FeatureComponent::Kind::kCustom;
  static std::mutex cache_mutex;
  static std::map<std::string, double> cache;
  if (cacheable) {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(component.name()); it != cache.end()) return it->second;
  }

  constexpr int kPoints = 1 << 15;
  std::vector<double> values(kPoints);
  double mean = 0.0;
  for (int m = 0; m < kPoints; ++m) {
    values[m] = eval_feature(component, (m + 0.5) / kPoints);
    mean += values[m];
  }
  mean /= kPoints;
  double var = 0.0;
  for (double f : values) var += (f - mean) * (f - mean);
  const double sd = std::sqrt(var / kPoints);

  if (cacheable) {
    std::lock_guard lock(cache_mutex);
    cache.emplace(component.name(), sd);
  }
  return sd;
}

LatentLabels sample_labels(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("sample_labels: n must be at least 1");
  Rng rng(seed, Stream::kLabels);
  std::vector<double> u(n);
  for (double& x : u) x = rng.uniform();
  return LatentLabels(std::move(u));
}

ProbabilityMatrix compute_P(const GraphonSpec& spec, const LatentLabels& labels) {
  const auto n = static_cast<Index>(labels.size());
  Matrix p(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double w = eval_graphon(spec, labels[i], labels[j]);
      p(i, j) = w;
      p(j, i) = w;
    }
  }
  return ProbabilityMatrix(std::move(p));
}

AdjacencyMatrix sample_adjacency(const ProbabilityMatrix& p, std::uint64_t seed) {
  const Index n = p.size();
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    Rng rng(seed, Stream::kAdjacency, static_cast<std::uint64_t>(i));
    for (Index j = i + 1; j < n; ++j) {
      if (rng.uniform() < p(i, j)) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return AdjacencyMatrix(std::move(a));
}

FeatureMatrix sample_features(const FeatureSpec& spec, const LatentLabels& labels,
                              std::uint64_t seed) {
  spec.validate();
  const auto n = static_cast<Index>(labels.size());
  const auto p = static_cast<Index>(spec.components.size());
  Matrix x(n, p);
  for (Index j = 0; j < p; ++j) {
    const FeatureComponent& c = spec.components[static_cast<std::size_t>(j)];
    Rng rng(seed, Stream::kFeatures, static_cast<std::uint64_t>(j));
    double sd = 1.0;
    if (c.deterministic() && spec.standardized) {
      sd = sd_estimate(c);
      if (!(sd > 0.0))
        throw ArgumentError("cannot standardize constant feature '" + c.name() + "'");
    }
    for (Index i = 0; i < n; ++i) {
      const double signal =
          c.deterministic() ? eval_feature(c, labels[static_cast<std::size_t>(i)]) / sd
                            : rng.normal();
      x(i, j) = signal + spec.sigma * rng.normal();
    }
  }
  return FeatureMatrix(std::move(x));
}

}  // namespace fans
