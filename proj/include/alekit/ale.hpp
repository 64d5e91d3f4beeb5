#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alekit/dataset.hpp"
#include "alekit/model.hpp"

namespace alekit {

// Grid a variable's local effects are evaluated on. Numeric variables carry
// strictly increasing boundaries spanning [min, max] of the source data;
// categorical and logical variables carry the dataset's level order.
struct ale_intervals {
  bool categorical = false;
  std::vector<double> boundaries;
  std::vector<std::string> levels;

  std::size_t size() const { return categorical ? levels.size() : boundaries.size(); }
  bool operator==(const ale_intervals&) const = default;
};

// Accumulated local effects of one variable: one entry per boundary (or
// level), the count of source rows attributed to each entry, and the effect
// values. Effects are always zero-centered in the ale_n-weighted sense;
// center_value is the display offset added on top (0 until centering).
struct ale_curve {
  ale_intervals x;
  std::vector<std::size_t> ale_n;
  std::vector<double> ale_y;
  double center_value = 0.0;
};

enum class center_kind { median, mean, zero };

// Builds the evaluation grid for `var` from d. Numeric columns with fewer than
// max_bins distinct values use the distinct values themselves; denser columns
// use empirical quantiles at j/max_bins for j = 0..max_bins, deduplicated.
// Asking for the outcome or an unknown column is an error.
ale_intervals compute_intervals(const dataset& d, const std::string& var,
                                std::size_t max_bins = 100);

// First-order ALE of a numeric variable: per interval, the mean change in
// prediction as the variable moves across the interval (rows attributed by
// membership, with values at the lowest boundary joining the first interval),
// accumulated from the left and zero-centered. Rows outside the grid range
// clamp to the end intervals. predict() is invoked once, on a stacked dataset,
// so external predictors pay one process per curve.
ale_curve compute_ale_numeric(const predictor& model, const dataset& d,
                              const std::string& var, const ale_intervals& intervals);

// ALE of a categorical or logical variable: the mean prediction over all rows
// with the variable forced to each level, minus the ale_n-weighted mean of
// those values. Levels absent from d get ale_n = 0 but a value all the same.
ale_curve compute_ale_categorical(const predictor& model, const dataset& d,
                                  const std::string& var, const ale_intervals& intervals);

// Dispatches on the interval kind.
ale_curve compute_ale(const predictor& model, const dataset& d, const std::string& var,
                      const ale_intervals& intervals);

// What a given centering mode adds to a zero-centered curve: the median (type
// 7) or mean of y, or nothing.
double center_offset(const std::vector<double>& y, center_kind kind);

// Re-centers a curve for display. The zero-centered values are recoverable by
// subtracting center_value, and every statistic does exactly that.
ale_curve center(ale_curve curve, double center_value);
ale_curve center(ale_curve curve, const dataset& d, center_kind kind);

}  // namespace alekit
