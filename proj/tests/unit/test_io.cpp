#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fans/config.hpp"
#include "fans/io.hpp"
#include "oracles.hpp"

using namespace fans;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "fans_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

io::CovariateSchema schema(std::initializer_list<std::pair<const char*, const char*>> cols) {
  io::CovariateSchema s;
  for (const auto& [name, kind] : cols) s.columns.emplace_back(name, io::parse_column_kind(kind));
  return s;
}

}  // namespace

TEST(EdgeList, SymmetrizesAndDropsLoops) {
  std::istringstream in("1 2\n2 1\n1 1\n");
  const auto a = io::parse_edge_list(in, {3, true});
  EXPECT_EQ(a.size(), 3);
  EXPECT_EQ(a.edge_count(), 1u);
  EXPECT_EQ(a(0, 1), 1.0);
  EXPECT_EQ(a(1, 0), 1.0);
  EXPECT_EQ(a(0, 0), 0.0);
}

TEST(EdgeList, EmptyFileGivesZeroMatrix) {
  std::istringstream in("");
  const auto a = io::parse_edge_list(in, {3, false});
  EXPECT_EQ(a.matrix(), Matrix::Zero(3, 3));
}

TEST(EdgeList, CommasCommentsAndInferredSize) {
  std::istringstream in("# friends\n0,4\n\n3 , 1\n");
  const auto a = io::parse_edge_list(in);
  EXPECT_EQ(a.size(), 5);
  EXPECT_EQ(a.edge_count(), 2u);
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
  std::istringstream bad("0 1\nzero one\n");
  try {
    io::parse_edge_list(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream range("0 1\n1 2\n2 7\n");
  try {
    io::parse_edge_list(range, {4, false});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream three("0 1 2\n");
  EXPECT_THROW(io::parse_edge_list(three), ParseError);
  std::istringstream zero("0 1\n");
  EXPECT_THROW(io::parse_edge_list(zero, {std::nullopt, true}), ParseError);
}

TEST(EdgeList, NonzeroCountMatchesLineScan) {
  // directed, duplicated edges over 587 nodes; reference count by a set of unordered pairs
  Rng rng(7);
  std::ostringstream text;
  std::set<std::pair<long, long>> reference;
  for (int e = 0; e < 5000; ++e) {
    const long u = static_cast<long>(rng.below(587)), v = static_cast<long>(rng.below(587));
    text << u + 1 << ' ' << v + 1 << '\n';
    if (u != v) reference.emplace(std::min(u, v), std::max(u, v));
  }
  std::istringstream in(text.str());
  const auto a = io::parse_edge_list(in, {587, true});
  EXPECT_EQ(static_cast<std::size_t>((a.matrix().array() != 0.0).count()), 2 * reference.size());
}

TEST(EdgeList, WriteReadRoundTrip) {
  Rng rng(3);
  const AdjacencyMatrix a(oracle::random_graph(25, 0.2, rng));
  const auto path = scratch("graph.edges");
  io::write_edge_list(path, a, "seed: 3");
  EXPECT_EQ(io::load_edge_list(path).matrix(), a.matrix());
  // isolated trailing nodes survive through the node-count record
  const AdjacencyMatrix sparse(Matrix::Zero(6, 6));
  io::write_edge_list(path, sparse);
  EXPECT_EQ(io::load_edge_list(path).size(), 6);
}

TEST(MatrixCsv, RoundTripIsExact) {
  Rng rng(4);
  Matrix m(7, 5);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal() * 1e-3 + rng.uniform();
  const auto path = scratch("m.csv");
  io::write_matrix_csv(path, m, "experiment:\n  n: 7");
  EXPECT_EQ(io::read_matrix_csv(path), m);
}

TEST(MatrixCsv, RejectsRaggedAndJunk) {
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(io::parse_matrix_csv(ragged), ParseError);
  std::istringstream junk("1,x\n");
  EXPECT_THROW(io::parse_matrix_csv(junk), ParseError);
}

TEST(Covariates, CategoricalOneHot) {
  std::istringstream in("id,gender,grade\n1,M,7\n2,F,12\n3,F,9\n");
  const auto t = io::parse_covariates(in, schema({{"gender", "categorical"}, {"grade", "ordinal"}}));
  ASSERT_EQ(t.features.features(), 3);
  EXPECT_EQ(t.column_names, (std::vector<std::string>{"gender=F", "gender=M", "grade"}));
  const Matrix& x = t.features.matrix();
  for (Index r = 0; r < 3; ++r) EXPECT_EQ(x(r, 0) + x(r, 1), 1.0);
  EXPECT_EQ(x(0, 2), 7.0);
  EXPECT_EQ(x(1, 2), 12.0);
}

TEST(Covariates, ConstantColumnFlagged) {
  std::istringstream in("race,age\nW,14\nW,15\n");
  const auto t = io::parse_covariates(in, schema({{"race", "categorical"}, {"age", "numeric"}}));
  ASSERT_EQ(t.features.features(), 2);
  EXPECT_TRUE(t.constant[0]);
  EXPECT_FALSE(t.constant[1]);
  EXPECT_EQ(t.features.matrix().col(0), Vector::Ones(2));
}

TEST(Covariates, MissingValues) {
  const std::string text = "grade,club\n7,chess\nNA,art\n9,\n";
  std::istringstream strict(text);
  try {
    io::parse_covariates(strict, schema({{"grade", "ordinal"}, {"club", "categorical"}}));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream lenient(text);
  const auto t = io::parse_covariates(lenient, schema({{"grade", "ordinal"}, {"club", "categorical"}}),
                                      io::CovariateOptions{',', true});
  EXPECT_EQ(t.features.matrix()(1, 0), 8.0);
  EXPECT_EQ(t.imputed_rows, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(t.features.matrix()(2, 1), 0.5);  // club=art column mean over observed rows
}

TEST(Covariates, SchemaErrors) {
  std::istringstream in("a,b\n1,2\n");
  EXPECT_THROW(io::parse_covariates(in, schema({{"c", "numeric"}})), ParseError);
  EXPECT_THROW(io::parse_column_kind("nominal"), ConfigError);
  std::istringstream bad("a\nx\n");
  EXPECT_THROW(io::parse_covariates(bad, schema({{"a", "numeric"}})), ParseError);
}

TEST(Roc, CsvHasAucRecord) {
  RocCurve c;
  c.points = {{0, 0}, {0.5, 1}, {1, 1}};
  c.auc = 0.75;
  const auto path = scratch("roc.csv");
  io::write_roc_csv(path, c, "seed: 1");
  std::ifstream in(path);
  std::stringstream all;
  all << in.rdbuf();
  EXPECT_NE(all.str().find("# auc=0.75"), std::string::npos);
  EXPECT_NE(all.str().find("fpr,tpr\n0,0\n0.5,1\n1,1\n"), std::string::npos);
}

TEST(Config, ParsesFullDocument) {
  const auto cfg = parse_experiment_config(R"(
experiment: {n: 120, trials: 3, seed: 9, threads: 2, output_dir: results}
graphons: [g1, g3, {kind: sbm, blocks: 2}, {kind: constant, level: 0.2}]
features: {components: [f1, f2, cos3], sigma: 0.3}
methods:
  - nbs
  - {name: fans, lambda: 0.1, cv: {grid: [0, 1], repeats: 4}}
  - {name: usvt, eta: 0.05}
sweep: {lambdas: [0, 0.5], sigmas: [0, 0.3]}
linkpred: {pairs: 50, mode: shared}
)");
  EXPECT_EQ(cfg.n, 120u);
  EXPECT_EQ(cfg.trials, 3);
  EXPECT_EQ(cfg.seed, 9u);
  ASSERT_EQ(cfg.graphons.size(), 4u);
  EXPECT_EQ(cfg.graphons[0].blocks, 4);  // floor(ln 120)
  EXPECT_EQ(cfg.graphons[2].blocks, 2);
  EXPECT_EQ(cfg.graphons[3].level, 0.2);
  ASSERT_TRUE(cfg.features);
  EXPECT_EQ(cfg.features->components.size(), 3u);
  ASSERT_EQ(cfg.methods.size(), 3u);
  EXPECT_EQ(*cfg.methods[1].lambda, 0.1);
  EXPECT_EQ(cfg.methods[1].cv.repeats, 4);
  EXPECT_EQ(cfg.methods[2].usvt_eta, 0.05);
  EXPECT_EQ(cfg.linkpred_mode, LooMode::kShared);
}

TEST(Config, RoundTripsThroughYaml) {
  auto cfg = parse_experiment_config(
      "experiment: {n: 50, seed: 4}\ngraphons: [g2, g4]\nfeatures: {components: [f4], sigma: 0.1}\n"
      "methods: [fans, sas]\n");
  const auto again = parse_experiment_config(to_yaml_string(cfg));
  EXPECT_EQ(to_yaml_string(again), to_yaml_string(cfg));
  EXPECT_EQ(again.graphons.size(), 2u);
}

TEST(Config, SizeFollowsNetwork) {
  auto cfg = parse_experiment_config("graphons: [g1]\n");
  set_network_size(cfg, 400);
  EXPECT_EQ(cfg.graphons[0].blocks, 5);
  set_network_size(cfg, 100);
  EXPECT_EQ(cfg.graphons[0].blocks, 4);
}

TEST(Config, RejectsInvalid) {
  EXPECT_THROW(parse_experiment_config("experiment: {trials: 0}\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("graphons: [g8]\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("methods: [magic]\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("features: {components: [f9]}\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("experimnt: {n: 3}\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("experiment: {n: [1, 2]}\n"), ConfigError);
  EXPECT_THROW(parse_experiment_config("experiment: {n: 5\n"), ConfigError);
  EXPECT_THROW(load_experiment_config("/nonexistent/config.yaml"), ConfigError);
}
