#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fans/evaluation.hpp"
#include "fans/types.hpp"

namespace fans::io {

struct EdgeListOptions {
  std::optional<Index> nodes;  // inferred from the largest index when absent
  bool one_based = false;
};

/// Whitespace- or comma-separated integer pairs, one per line. Blank lines and
/// lines starting with '#' are skipped. Directed input is symmetrized by OR,
/// self-loops are dropped and duplicates collapse.
AdjacencyMatrix parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
AdjacencyMatrix load_edge_list(const std::filesystem::path& path,
                               const EdgeListOptions& options = {});
void write_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& a,
                     std::string_view comment = {});

/// Dense CSV, one row per line, no header. Lines starting with '#' are comments.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      std::string_view comment = {});
Matrix read_matrix_csv(const std::filesystem::path& path);
Matrix parse_matrix_csv(std::istream& in);

enum class ColumnKind { kOrdinal, kCategorical, kNumeric };
ColumnKind parse_column_kind(std::string_view name);

struct CovariateSchema {
  std::vector<std::pair<std::string, ColumnKind>> columns;  // columns absent here are ignored
};

struct CovariateOptions {
  char delimiter = ',';
  bool impute_mean = false;
};

struct CovariateTable {
  FeatureMatrix features;
  std::vector<std::string> column_names;  // "grade", "gender=F", ...
  std::vector<bool> constant;             // screen-out candidates
  std::vector<std::size_t> imputed_rows;  // 1-based data rows that had missing values
};

/// Ordinal and numeric columns map to one numeric column each; a categorical
/// column with c levels maps to c indicator columns (levels sorted).
CovariateTable parse_covariates(std::istream& in, const CovariateSchema& schema,
                                const CovariateOptions& options = {});
CovariateTable load_covariates(const std::filesystem::path& path, const CovariateSchema& schema,
                               const CovariateOptions& options = {});

/// Two-column "fpr,tpr" CSV preceded by an "# auc=<value>" record.
void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve,
                   std::string_view comment = {});

/// Prefixes every line of `text` with "# ".
std::string comment_block(std::string_view text);

}  // namespace fans::io
