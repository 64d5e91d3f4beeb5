#include "alekit/ale.hpp"

#include <algorithm>
#include <stdexcept>

#include "alekit/numeric.hpp"

namespace alekit {

ale_intervals compute_intervals(const dataset& d, const std::string& var,
                                std::size_t max_bins) {
  if (max_bins == 0) throw std::invalid_argument("max_bins must be >= 1");
  if (var == d.outcome().name)
    throw std::invalid_argument("cannot compute effects for the outcome column '" + var + "'");
  const column& col = d.require(var);

  ale_intervals iv;
  if (col.kind != column_kind::numeric) {
    iv.categorical = true;
    iv.levels = col.levels;
    return iv;
  }

  std::vector<double> distinct = col.values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  if (distinct.size() < max_bins) {
    iv.boundaries = std::move(distinct);
    return iv;
  }
  for (std::size_t j = 0; j <= max_bins; ++j) {
    double q = quantile_type7(col.values, static_cast<double>(j) / static_cast<double>(max_bins));
    if (iv.boundaries.empty() || q > iv.boundaries.back()) iv.boundaries.push_back(q);
  }
  return iv;
}

namespace {

// Index of the entry a row's value is counted under: values at the lowest
// boundary stay there, anything else is counted at the right edge of the
// interval it falls in, clamped to the grid.
std::size_t count_slot(const std::vector<double>& z, double x) {
  if (x == z.front()) return 0;
  auto it = std::lower_bound(z.begin(), z.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - z.begin());
  if (idx == 0) return 1;                  // below the grid: first interval
  if (idx >= z.size()) return z.size() - 1;  // above the grid: last interval
  return idx;
}

// The moving-variable column replaced by explicit values, everything else
// duplicated for a two-segment batch (rows moved to their interval's upper
// boundary, then the same rows moved to the lower boundary).
dataset stack_with_replaced(const dataset& d, std::size_t var_index,
                            const std::vector<double>& upper,
                            const std::vector<double>& lower) {
  dataset out;
  out.n_rows = d.n_rows * 2;
  out.outcome_index = d.outcome_index;
  out.columns.resize(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const column& src = d.columns[c];
    column& dst = out.columns[c];
    dst.name = src.name;
    dst.kind = src.kind;
    dst.levels = src.levels;
    if (c == var_index) {
      dst.values = upper;
      dst.values.insert(dst.values.end(), lower.begin(), lower.end());
    } else if (src.kind == column_kind::numeric) {
      dst.values = src.values;
      dst.values.insert(dst.values.end(), src.values.begin(), src.values.end());
    } else {
      dst.codes = src.codes;
      dst.codes.insert(dst.codes.end(), src.codes.begin(), src.codes.end());
    }
  }
  return out;
}

}  // namespace

ale_curve compute_ale_numeric(const predictor& model, const dataset& d,
                              const std::string& var, const ale_intervals& intervals) {
  if (intervals.categorical)
    throw std::invalid_argument("numeric ALE called with categorical intervals");
  if (var == d.outcome().name)
    throw std::invalid_argument("cannot compute effects for the outcome column '" + var + "'");
  const column& col = d.require(var);
  if (col.kind != column_kind::numeric)
    throw std::invalid_argument("column '" + var + "' is not numeric");
  const std::vector<double>& z = intervals.boundaries;
  if (z.empty()) throw std::invalid_argument("empty interval grid");
  if (d.n_rows == 0) throw std::invalid_argument("cannot compute effects on an empty dataset");

  ale_curve curve;
  curve.x = intervals;
  curve.ale_n.assign(z.size(), 0);
  curve.ale_y.assign(z.size(), 0.0);
  if (z.size() == 1) {
    curve.ale_n[0] = d.n_rows;
    return curve;
  }

  // Each row is pushed to its interval's two boundaries; one stacked predict
  // call covers the whole curve.
  std::vector<std::size_t> slot(d.n_rows);
  std::vector<double> upper(d.n_rows), lower(d.n_rows);
  for (std::size_t r = 0; r < d.n_rows; ++r) {
    std::size_t s = count_slot(z, col.values[r]);
    slot[r] = s;
    curve.ale_n[s] += 1;
    std::size_t interval_hi = s == 0 ? 1 : s;  // rows at z_0 move with interval 1
    upper[r] = z[interval_hi];
    lower[r] = z[interval_hi - 1];
  }

  std::size_t var_index = static_cast<std::size_t>(d.find(var));
  std::vector<double> pred = model.predict(stack_with_replaced(d, var_index, upper, lower));

  std::vector<double> effect_sum(z.size(), 0.0);
  std::vector<std::size_t> effect_n(z.size(), 0);
  for (std::size_t r = 0; r < d.n_rows; ++r) {
    std::size_t j = slot[r] == 0 ? 1 : slot[r];
    effect_sum[j] += pred[r] - pred[d.n_rows + r];
    effect_n[j] += 1;
  }

  double acc = 0.0;
  for (std::size_t j = 1; j < z.size(); ++j) {
    if (effect_n[j] > 0) acc += effect_sum[j] / static_cast<double>(effect_n[j]);
    curve.ale_y[j] = acc;
  }

  double weighted = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    weighted += static_cast<double>(curve.ale_n[j]) * curve.ale_y[j];
  weighted /= static_cast<double>(d.n_rows);
  for (double& y : curve.ale_y) y -= weighted;
  return curve;
}

ale_curve compute_ale_categorical(const predictor& model, const dataset& d,
                                  const std::string& var, const ale_intervals& intervals) {
  if (!intervals.categorical)
    throw std::invalid_argument("categorical ALE called with numeric intervals");
  if (var == d.outcome().name)
    throw std::invalid_argument("cannot compute effects for the outcome column '" + var + "'");
  const column& col = d.require(var);
  if (col.kind == column_kind::numeric)
    throw std::invalid_argument("column '" + var + "' is not categorical");
  const std::vector<std::string>& levels = intervals.levels;
  if (levels.empty()) throw std::invalid_argument("empty level grid");
  if (d.n_rows == 0) throw std::invalid_argument("cannot compute effects on an empty dataset");

  // The grid's level strings resolved to this dataset's codes; the grid always
  // originates from the same schema, so every level must resolve.
  std::vector<std::int32_t> grid_code(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::ptrdiff_t code = -1;
    for (std::size_t l = 0; l < col.levels.size(); ++l)
      if (col.levels[l] == levels[k]) { code = static_cast<std::ptrdiff_t>(l); break; }
    if (code < 0)
      throw std::invalid_argument("level '" + levels[k] + "' unknown to column '" + var + "'");
    grid_code[k] = static_cast<std::int32_t>(code);
  }

  ale_curve curve;
  curve.x = intervals;
  curve.ale_n.assign(levels.size(), 0);
  curve.ale_y.assign(levels.size(), 0.0);
  for (std::size_t r = 0; r < d.n_rows; ++r) {
    std::ptrdiff_t k = -1;
    for (std::size_t g = 0; g < grid_code.size(); ++g)
      if (grid_code[g] == col.codes[r]) { k = static_cast<std::ptrdiff_t>(g); break; }
    if (k < 0)
      throw std::invalid_argument("row level '" +
                                  col.levels[static_cast<std::size_t>(col.codes[r])] +
                                  "' missing from the interval grid for '" + var + "'");
    curve.ale_n[static_cast<std::size_t>(k)] += 1;
  }

  // One stacked dataset: all rows with the variable forced to level 0, then to
  // level 1, and so on.
  std::size_t var_index = static_cast<std::size_t>(d.find(var));
  dataset stacked;
  stacked.n_rows = d.n_rows * levels.size();
  stacked.outcome_index = d.outcome_index;
  stacked.columns.resize(d.columns.size());
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    const column& src = d.columns[c];
    column& dst = stacked.columns[c];
    dst.name = src.name;
    dst.kind = src.kind;
    dst.levels = src.levels;
    for (std::size_t k = 0; k < levels.size(); ++k) {
      if (c == var_index) {
        dst.codes.insert(dst.codes.end(), d.n_rows, grid_code[k]);
      } else if (src.kind == column_kind::numeric) {
        dst.values.insert(dst.values.end(), src.values.begin(), src.values.end());
      } else {
        dst.codes.insert(dst.codes.end(), src.codes.begin(), src.codes.end());
      }
    }
  }
  std::vector<double> pred = model.predict(stacked);

  std::vector<double> raw(levels.size(), 0.0);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < d.n_rows; ++r) s += pred[k * d.n_rows + r];
    raw[k] = s / static_cast<double>(d.n_rows);
  }
  double weighted = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k)
    weighted += static_cast<double>(curve.ale_n[k]) * raw[k];
  weighted /= static_cast<double>(d.n_rows);
  for (std::size_t k = 0; k < levels.size(); ++k) curve.ale_y[k] = raw[k] - weighted;
  return curve;
}

ale_curve compute_ale(const predictor& model, const dataset& d, const std::string& var,
                      const ale_intervals& intervals) {
  return intervals.categorical ? compute_ale_categorical(model, d, var, intervals)
                               : compute_ale_numeric(model, d, var, intervals);
}

double center_offset(const std::vector<double>& y, center_kind kind) {
  switch (kind) {
    case center_kind::median: return median(y);
    case center_kind::mean: return mean(y);
    case center_kind::zero: return 0.0;
  }
  throw std::logic_error("unreachable");
}

ale_curve center(ale_curve curve, double center_value) {
  double shift = center_value - curve.center_value;
  for (double& y : curve.ale_y) y += shift;
  curve.center_value = center_value;
  return curve;
}

ale_curve center(ale_curve curve, const dataset& d, center_kind kind) {
  return center(std::move(curve), center_offset(d.y(), kind));
}

}  // namespace alekit
