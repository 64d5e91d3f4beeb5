#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace alekit {

enum class column_kind { numeric, categorical, logical };

// One column of a loaded table. Numeric columns fill `values`; categorical and
// logical columns fill `codes` (indices into `levels`). Categorical levels are
// listed in order of first appearance in the source; logical columns always
// carry the fixed domain [FALSE, TRUE].
struct column {
  std::string name;
  column_kind kind = column_kind::numeric;
  std::vector<double> values;
  std::vector<std::int32_t> codes;
  std::vector<std::string> levels;

  std::size_t size() const {
    return kind == column_kind::numeric ? values.size() : codes.size();
  }

  // Cell rendered the way it would appear in a CSV (numerics in round-trip
  // precision, factor cells as their level string).
  std::string cell_text(std::size_t row) const;
};

// Immutable-by-convention table: every operation that changes data returns a
// new dataset and leaves its input untouched.
struct dataset {
  std::vector<column> columns;
  std::size_t outcome_index = 0;
  std::size_t n_rows = 0;

  const column& outcome() const { return columns[outcome_index]; }
  const std::vector<double>& y() const { return outcome().values; }

  // Index of a named column, or -1 when absent.
  std::ptrdiff_t find(const std::string& name) const;
  const column& require(const std::string& name) const;

  std::vector<std::size_t> predictor_indices() const;
};

// Loads an RFC 4180 CSV (quoted fields, embedded separators/newlines, CRLF or
// LF). Column kinds are inferred: all cells parse as finite numbers -> numeric;
// all cells in {TRUE, FALSE, true, false} -> logical; anything else ->
// categorical. Ragged rows, empty cells, a missing or non-numeric outcome, and
// an empty body are errors.
dataset load_csv(const std::string& path, const std::string& outcome_name);

// Same inference applied to in-memory text, used by tests and fixtures.
dataset parse_csv(const std::string& text, const std::string& outcome_name,
                  const std::string& origin = "<memory>");

// n_rows draws with replacement, deterministic per seed. Column kinds and
// level lists are preserved verbatim, including levels the draw missed.
dataset resample(const dataset& d, std::uint64_t seed);

// Appends a standard-normal numeric column, deterministic per seed. The name
// must not collide with an existing column.
dataset append_random_column(const dataset& d, const std::string& name, std::uint64_t seed);

}  // namespace alekit
