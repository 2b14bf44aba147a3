#include "fans/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace fans::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  return out;
}

bool is_missing(std::string_view v) {
  return v.empty() || v == "NA" || v == "na" || v == "NaN" || v == "nan" || v == ".";
}

std::optional<double> to_double(std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) return std::nullopt;
  return out;
}

}  // namespace

std::string comment_block(std::string_view text) {
  std::string out;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  return out;
}

AdjacencyMatrix parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::pair<long long, long long>> raw;
  std::vector<std::size_t> raw_lines;
  std::optional<Index> declared;  // "# nodes=N" as written by write_edge_list
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto t = trim(line); t.starts_with("# nodes=")) {
      long long v = 0;
      const auto digits = t.substr(8);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || v < 0)
        throw ParseError("malformed node count", line_no);
      declared = static_cast<Index>(v);
    }
    if (skippable(line)) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long a = 0, b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra))
      throw ParseError("expected two integer node indices, got '" + std::string(trim(line)) + "'",
                       line_no);
    const long long base = options.one_based ? 1 : 0;
    if (a < base || b < base) throw ParseError("node index below " + std::to_string(base), line_no);
    raw.emplace_back(a - base, b - base);
    raw_lines.push_back(line_no);
  }
  const std::optional<Index> fixed = options.nodes ? options.nodes : declared;
  Index n = fixed.value_or(0);
  for (std::size_t e = 0; e < raw.size(); ++e) {
    const long long top = std::max(raw[e].first, raw[e].second);
    if (fixed && top >= *fixed)
      throw ParseError("node index out of range for " + std::to_string(*fixed) + " nodes",
                       raw_lines[e]);
    if (!fixed) n = std::max<Index>(n, top + 1);
  }
  std::vector<std::pair<Index, Index>> edges(raw.begin(), raw.end());
  return AdjacencyMatrix::from_edges(n, edges);
}

AdjacencyMatrix load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  auto in = open_input(path);
  return parse_edge_list(in, options);
}

void write_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& a,
                     std::string_view comment) {
  auto out = open_output(path);
  out << comment_block(comment) << "# nodes=" << a.size() << "\n";
  for (const auto& [i, j] : a.edges()) out << i << ' ' << j << '\n';
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m, std::string_view comment) {
  auto out = open_output(path);
  out << comment_block(comment);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

Matrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<double> row;
    for (auto field : split_fields(line, ',')) {
      auto v = to_double(field);
      if (!v) throw ParseError("not a number: '" + std::string(field) + "'", line_no);
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row", line_no);
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_matrix_csv(in);
}

ColumnKind parse_column_kind(std::string_view name) {
  if (name == "ordinal") return ColumnKind::kOrdinal;
  if (name == "categorical") return ColumnKind::kCategorical;
  if (name == "numeric") return ColumnKind::kNumeric;
  throw ConfigError("unknown column kind '" + std::string(name) + "'");
}

CovariateTable parse_covariates(std::istream& in, const CovariateSchema& schema,
                                const CovariateOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    for (auto f : split_fields(line, options.delimiter)) header.emplace_back(f);
    break;
  }
  if (header.empty()) throw ParseError("covariate table has no header", line_no);

  std::vector<std::size_t> source;  // header position of each schema column
  for (const auto& [name, kind] : schema.columns) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("column '" + name + "' not found in header", line_no);
    source.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  // cells[c][r] holds the raw text of schema column c in data row r
  std::vector<std::vector<std::string>> cells(schema.columns.size());
  std::vector<std::size_t> data_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto fields = split_fields(line, options.delimiter);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    for (std::size_t c = 0; c < source.size(); ++c) cells[c].emplace_back(fields[source[c]]);
    data_lines.push_back(line_no);
  }
  const std::size_t rows = data_lines.size();

  std::set<std::size_t> missing_rows;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (is_missing(cells[c][r])) {
        if (!options.impute_mean)
          throw ParseError("missing value in column '" + schema.columns[c].first +
                               "' (enable mean imputation to continue)",
                           data_lines[r]);
        missing_rows.insert(r + 1);
      }

  std::vector<std::vector<double>> columns;
  CovariateTable table;
  auto add_column = [&](std::string name, std::vector<double> values, std::vector<bool> missing) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < rows; ++r)
      if (!missing[r]) {
        sum += values[r];
        ++count;
      }
    const double mean = count ? sum / static_cast<double>(count) : 0.0;
    for (std::size_t r = 0; r < rows; ++r)
      if (missing[r]) values[r] = mean;
    const bool constant =
        std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
    table.column_names.push_back(std::move(name));
    table.constant.push_back(constant);
    columns.push_back(std::move(values));
  };

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& [name, kind] = schema.columns[c];
    std::vector<bool> missing(rows);
    for (std::size_t r = 0; r < rows; ++r) missing[r] = is_missing(cells[c][r]);
    if (kind == ColumnKind::kCategorical) {
      std::set<std::string> levels;
      for (std::size_t r = 0; r < rows; ++r)
        if (!missing[r]) levels.insert(cells[c][r]);
      for (const auto& level : levels) {
        std::vector<double> indicator(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r) indicator[r] = cells[c][r] == level ? 1.0 : 0.0;
        add_column(name + "=" + level, std::move(indicator), missing);
      }
    } else {
      std::vector<double> values(rows, 0.0);
      for (std::size_t r = 0; r < rows; ++r) {
        if (missing[r]) continue;
        auto v = to_double(cells[c][r]);
        if (!v)
          throw ParseError("column '" + name + "' expects a number, got '" + cells[c][r] + "'",
                           data_lines[r]);
        values[r] = *v;
      }
      add_column(name, std::move(values), missing);
    }
  }

  Matrix x(static_cast<Index>(rows), static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      x(static_cast<Index>(r), static_cast<Index>(c)) = columns[c][r];
  table.features = FeatureMatrix(std::move(x));
  table.imputed_rows.assign(missing_rows.begin(), missing_rows.end());
  return table;
}

CovariateTable load_covariates(const std::filesystem::path& path, const CovariateSchema& schema,
                               const CovariateOptions& options) {
  auto in = open_input(path);
  return parse_covariates(in, schema, options);
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve,
                   std::string_view comment) {
  auto out = open_output(path);
  out << comment_block(comment) << "# auc=" << curve.auc << "\nfpr,tpr\n";
  for (const auto& p : curve.points) out << p.fpr << ',' << p.tpr << '\n';
}

}  // namespace fans::io
