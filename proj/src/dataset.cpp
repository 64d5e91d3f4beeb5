#include "alekit/dataset.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "alekit/format.hpp"
#include "alekit/rng.hpp"

namespace alekit {

std::string column::cell_text(std::size_t row) const {
  if (kind == column_kind::numeric) return format_double(values[row]);
  return levels[static_cast<std::size_t>(codes[row])];
}

std::ptrdiff_t dataset::find(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

const column& dataset::require(const std::string& name) const {
  std::ptrdiff_t i = find(name);
  if (i < 0) throw std::invalid_argument("column '" + name + "' not found");
  return columns[static_cast<std::size_t>(i)];
}

std::vector<std::size_t> dataset::predictor_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (i != outcome_index) out.push_back(i);
  return out;
}

namespace {

// Splits CSV text into records of fields. Quoted fields may contain commas,
// doubled quotes and newlines; records end at LF or CRLF. The header counts as
// row 1 in error messages.
std::vector<std::vector<std::string>> split_records(const std::string& text,
                                                    const std::string& origin) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool record_has_content = false;

  auto end_field = [&] {
    fields.push_back(field);
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(fields);
    fields.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        if (record_has_content || !field.empty() || !fields.empty()) end_record();
        break;
      default:
        field += c;
        record_has_content = true;
        break;
    }
  }
  if (in_quotes)
    throw std::runtime_error(origin + ": unterminated quoted field");
  if (record_has_content || !field.empty() || !fields.empty()) end_record();
  return records;
}

bool parses_as_finite_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) return false;
  if (v != v || v == 1.0 / 0.0 || v == -1.0 / 0.0) return false;
  *out = v;
  return true;
}

bool is_logical_text(const std::string& s) {
  return s == "TRUE" || s == "FALSE" || s == "true" || s == "false";
}

}  // namespace

dataset parse_csv(const std::string& text, const std::string& outcome_name,
                  const std::string& origin) {
  auto records = split_records(text, origin);
  if (records.empty()) throw std::runtime_error(origin + ": empty file");
  const auto& header = records[0];

  std::set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty())
      throw std::runtime_error(origin + ": empty column name in header");
    if (!seen.insert(name).second)
      throw std::runtime_error(origin + ": duplicate column name '" + name + "'");
  }
  if (records.size() == 1)
    throw std::runtime_error(origin + ": no data rows");

  std::size_t n_cols = header.size();
  std::size_t n_rows = records.size() - 1;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != n_cols) {
      std::ostringstream msg;
      msg << origin << ": row " << (r + 1) << " has " << records[r].size()
          << " fields, expected " << n_cols;
      throw std::runtime_error(msg.str());
    }
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (records[r][c].empty()) {
        std::ostringstream msg;
        msg << origin << ": missing value at row " << (r + 1) << ", column '"
            << header[c] << "'";
        throw std::runtime_error(msg.str());
      }
    }
  }

  dataset d;
  d.n_rows = n_rows;
  d.columns.resize(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    column& col = d.columns[c];
    col.name = header[c];

    bool all_numeric = true;
    bool all_logical = true;
    std::vector<double> parsed(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
      const std::string& cell = records[r + 1][c];
      if (all_numeric && !parses_as_finite_number(cell, &parsed[r])) all_numeric = false;
      if (all_logical && !is_logical_text(cell)) all_logical = false;
      if (!all_numeric && !all_logical) break;
    }

    if (all_numeric) {
      col.kind = column_kind::numeric;
      col.values = std::move(parsed);
    } else if (all_logical) {
      col.kind = column_kind::logical;
      col.levels = {"FALSE", "TRUE"};
      col.codes.resize(n_rows);
      for (std::size_t r = 0; r < n_rows; ++r) {
        const std::string& cell = records[r + 1][c];
        col.codes[r] = (cell == "TRUE" || cell == "true") ? 1 : 0;
      }
    } else {
      col.kind = column_kind::categorical;
      col.codes.resize(n_rows);
      for (std::size_t r = 0; r < n_rows; ++r) {
        const std::string& cell = records[r + 1][c];
        std::int32_t code = -1;
        for (std::size_t l = 0; l < col.levels.size(); ++l)
          if (col.levels[l] == cell) { code = static_cast<std::int32_t>(l); break; }
        if (code < 0) {
          code = static_cast<std::int32_t>(col.levels.size());
          col.levels.push_back(cell);
        }
        col.codes[r] = code;
      }
    }
  }

  std::ptrdiff_t oi = d.find(outcome_name);
  if (oi < 0)
    throw std::runtime_error(origin + ": outcome column '" + outcome_name + "' not found");
  d.outcome_index = static_cast<std::size_t>(oi);
  if (d.outcome().kind != column_kind::numeric)
    throw std::runtime_error(origin + ": outcome column '" + outcome_name + "' is not numeric");
  return d;
}

dataset load_csv(const std::string& path, const std::string& outcome_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), outcome_name, path);
}

dataset resample(const dataset& d, std::uint64_t seed) {
  pcg32 rng(seed, rng_purpose::resample);
  std::vector<std::size_t> rows(d.n_rows);
  for (std::size_t i = 0; i < d.n_rows; ++i)
    rows[i] = rng.next_below(static_cast<std::uint32_t>(d.n_rows));

  dataset out;
  out.n_rows = d.n_rows;
  out.outcome_index = d.outcome_index;
  out.columns.resize(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const column& src = d.columns[c];
    column& dst = out.columns[c];
    dst.name = src.name;
    dst.kind = src.kind;
    dst.levels = src.levels;
    if (src.kind == column_kind::numeric) {
      dst.values.resize(d.n_rows);
      for (std::size_t i = 0; i < d.n_rows; ++i) dst.values[i] = src.values[rows[i]];
    } else {
      dst.codes.resize(d.n_rows);
      for (std::size_t i = 0; i < d.n_rows; ++i) dst.codes[i] = src.codes[rows[i]];
    }
  }
  return out;
}

dataset append_random_column(const dataset& d, const std::string& name, std::uint64_t seed) {
  if (d.find(name) >= 0)
    throw std::invalid_argument("column '" + name + "' already exists");
  pcg32 rng(seed, rng_purpose::random_column);
  column col;
  col.name = name;
  col.kind = column_kind::numeric;
  col.values.resize(d.n_rows);
  for (std::size_t i = 0; i < d.n_rows; ++i) col.values[i] = rng.next_normal();

  dataset out = d;
  out.columns.push_back(std::move(col));
  return out;
}

}  // namespace alekit
