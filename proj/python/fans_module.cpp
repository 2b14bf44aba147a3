#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fans/baselines.hpp"
#include "fans/dissimilarity.hpp"
#include "fans/estimator.hpp"
#include "fans/evaluation.hpp"
#include "fans/graphon.hpp"
#include "fans/selection.hpp"

namespace py = pybind11;
using namespace fans;

namespace {

std::optional<FeatureMatrix> features_or_none(const std::optional<Matrix>& x) {
  if (!x) return std::nullopt;
  return FeatureMatrix(*x);
}

FeatureSpec make_feature_spec(const std::vector<std::string>& ids, double sigma) {
  FeatureSpec spec;
  for (const auto& id : ids) spec.components.push_back(FeatureComponent::parse(id));
  spec.sigma = sigma;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graphon estimation by feature-assisted neighborhood smoothing";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("graphon_matrix",
        [](const std::string& name, const std::vector<double>& labels) {
          const auto spec = graphon_by_name(name, labels.size());
          return compute_P(spec, LatentLabels(labels)).matrix();
        },
        py::arg("name"), py::arg("labels"), "P_ij = w(u_i, u_j) for a catalog graphon.");

  m.def("simulate",
        [](const std::string& graphon, std::size_t n, std::uint64_t seed,
           const std::vector<std::string>& features, double sigma) {
          const auto spec = graphon_by_name(graphon, n);
          const LatentLabels labels = sample_labels(n, seed);
          const ProbabilityMatrix p = compute_P(spec, labels);
          py::dict out;
          out["labels"] = labels.values();
          out["P"] = p.matrix();
          out["A"] = sample_adjacency(p, seed).matrix();
          if (!features.empty())
            out["X"] = sample_features(make_feature_spec(features, sigma), labels, seed).matrix();
          return out;
        },
        py::arg("graphon"), py::arg("n"), py::arg("seed") = 0,
        py::arg("features") = std::vector<std::string>{}, py::arg("sigma") = 0.0,
        "Draws labels, P, A and (optionally) X; returns a dict of arrays.");

  m.def("d0_hat",
        [](const Matrix& a, bool tie_correction, std::uint64_t seed) {
          return d0_hat(AdjacencyMatrix(a), TieBreakConfig{tie_correction, seed}).matrix();
        },
        py::arg("A"), py::arg("tie_correction") = false, py::arg("seed") = 0);

  m.def("d0_mod",
        [](const Matrix& a, bool tie_correction, std::uint64_t seed) {
          return d0_mod(AdjacencyMatrix(a), TieBreakConfig{tie_correction, seed}).matrix();
        },
        py::arg("A"), py::arg("tie_correction") = false, py::arg("seed") = 0);

  m.def("s_hat", [](const Matrix& x) { return s_hat(FeatureMatrix(x)).matrix(); }, py::arg("X"));

  m.def("fans_estimate",
        [](const Matrix& a, const std::optional<Matrix>& x, double lambda, double c0,
           bool tie_correction, std::uint64_t seed) {
          const auto features = features_or_none(x);
          return fans_estimate(AdjacencyMatrix(a), features ? &*features : nullptr,
                               EstimatorConfig{lambda, c0, tie_correction, seed})
              .matrix();
        },
        py::arg("A"), py::arg("X") = py::none(), py::arg("lam") = 0.0, py::arg("c0") = 1.0,
        py::arg("tie_correction") = true, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  m.def("nbs_estimate",
        [](const Matrix& a, double c0) { return nbs_estimate(AdjacencyMatrix(a), c0).matrix(); },
        py::arg("A"), py::arg("c0") = 1.0, py::call_guard<py::gil_scoped_release>());

  m.def("usvt_estimate",
        [](const Matrix& a, double eta) { return usvt_estimate(a, UsvtConfig{eta}).matrix(); },
        py::arg("A"), py::arg("eta") = 0.01, py::call_guard<py::gil_scoped_release>());

  m.def("sas_estimate",
        [](const Matrix& a, std::optional<Index> bins) {
          const AdjacencyMatrix adj(a);
          SasConfig cfg = SasConfig::for_size(adj.size());
          if (bins) cfg.bins = *bins;
          return sas_estimate(adj, cfg).matrix();
        },
        py::arg("A"), py::arg("bins") = py::none());

  m.def("cross_validate",
        [](const Matrix& a, const Matrix& x, std::optional<std::vector<double>> grid, int repeats,
           double validation_fraction, double c0, std::uint64_t seed, unsigned threads) {
          CvConfig cfg;
          if (grid) cfg.grid = *grid;
          cfg.repeats = repeats;
          cfg.validation_fraction = validation_fraction;
          cfg.c0 = c0;
          cfg.seed = seed;
          cfg.threads = threads;
          const CvResult r = cross_validate(AdjacencyMatrix(a), FeatureMatrix(x), cfg);
          return py::make_tuple(r.lambda_opt, r.mean_loss, r.losses);
        },
        py::arg("A"), py::arg("X"), py::arg("grid") = py::none(), py::arg("repeats") = 10,
        py::arg("validation_fraction") = 0.1, py::arg("c0") = 1.0, py::arg("seed") = 0,
        py::arg("threads") = 1, "Returns (lambda_opt, mean_loss, losses).");

  m.def("kendall_tau",
        [](const std::vector<double>& x, const std::vector<double>& y) { return kendall_tau(x, y); },
        py::arg("x"), py::arg("y"), "Kendall tau-b, or None when either input is constant.");

  m.def("screen_features",
        [](const Matrix& a, const Matrix& x, double threshold) {
          const ScreenResult r = screen_features(AdjacencyMatrix(a), FeatureMatrix(x),
                                                 ScreenConfig{threshold});
          return py::make_tuple(r.kept, r.taus);
        },
        py::arg("A"), py::arg("X"), py::arg("threshold") = 0.03, "Returns (kept, taus).");

  m.def("mse_mae",
        [](const Matrix& estimate, const Matrix& truth) {
          const MetricReport r = mse_mae(ProbabilityMatrix(estimate), ProbabilityMatrix(truth));
          return py::make_tuple(r.mse, r.mae);
        },
        py::arg("estimate"), py::arg("truth"));

  m.def("paired_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b) { return paired_t_test(a, b); },
        py::arg("a"), py::arg("b"), "One-sided p-value for mean(a) < mean(b).");

  m.def("roc_auc",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
          const RocCurve c = roc_auc(scores, labels);
          std::vector<double> fpr, tpr;
          for (const auto& p : c.points) {
            fpr.push_back(p.fpr);
            tpr.push_back(p.tpr);
          }
          return py::make_tuple(c.auc, fpr, tpr);
        },
        py::arg("scores"), py::arg("labels"), "Returns (auc, fpr, tpr).");

  m.def("loo_link_predict",
        [](const Matrix& a, const std::optional<Matrix>& x,
           const std::vector<std::pair<Index, Index>>& pairs, double lambda, double c0,
           bool tie_correction, std::uint64_t seed, const std::string& mode, unsigned threads) {
          const auto features = features_or_none(x);
          LinkPredictionConfig cfg;
          cfg.estimator = EstimatorConfig{lambda, c0, tie_correction, seed};
          if (mode == "exact") cfg.mode = LooMode::kExact;
          else if (mode == "shared") cfg.mode = LooMode::kShared;
          else throw ArgumentError("mode must be 'exact' or 'shared'");
          cfg.threads = threads;
          std::vector<NodePair> requested;
          for (const auto& [i, j] : pairs) requested.push_back({i, j});
          const auto scores =
              loo_link_predict(AdjacencyMatrix(a), features ? &*features : nullptr, cfg, requested);
          std::vector<double> out;
          for (const auto& s : scores) out.push_back(s.score);
          return out;
        },
        py::arg("A"), py::arg("X") = py::none(), py::arg("pairs"), py::arg("lam") = 0.0,
        py::arg("c0") = 1.0, py::arg("tie_correction") = true, py::arg("seed") = 0,
        py::arg("mode") = "exact", py::arg("threads") = 1);
}
