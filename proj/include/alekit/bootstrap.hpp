#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alekit/ale.hpp"
#include "alekit/dataset.hpp"
#include "alekit/model.hpp"

namespace alekit {

// How uncertainty is propagated: `none` evaluates once on the full data,
// `data_only` resamples rows under a fixed fitted model, `model` refits the
// trainer on every resample (the expensive but honest option).
enum class boot_mode { none, data_only, model };

// Pointwise summary of values across bootstrap iterations. lo/hi are the
// symmetric type-7 quantiles for the requested CI level.
struct aggregate_summary {
  double mean = 0.0;
  double median = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

aggregate_summary aggregate(const std::vector<double>& values, double ci_level);

// A bootstrapped ALE curve. The grid and ale_n always describe the full
// dataset: every iteration is evaluated on the same fixed intervals, so
// entries are comparable across iterations and the aggregates below are
// entrywise summaries. ale_y vectors are display-centered (center_value added,
// the same offset for every iteration).
struct boot_ale_curve {
  ale_intervals x;
  std::vector<std::size_t> ale_n;
  std::vector<double> ale_y_mean;
  std::vector<double> ale_y_median;
  std::vector<double> ale_y_lo;
  std::vector<double> ale_y_hi;
  double ci_level = 0.95;
  std::size_t n_it = 0;
  boot_mode mode = boot_mode::none;
  double center_value = 0.0;

  // Per-iteration detail, kept only on request (statistics need it): row i is
  // iteration i's display-centered curve with its own resample counts.
  std::vector<std::vector<double>> per_iteration;
  std::vector<std::vector<std::size_t>> per_iteration_n;
};

struct boot_options {
  boot_mode mode = boot_mode::data_only;
  std::size_t n_it = 100;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
  std::size_t max_bins = 100;
  center_kind centering = center_kind::median;
  bool keep_iterations = false;
  unsigned n_threads = 1;
};

// Bootstraps the ALE of `var`. Intervals are computed once from the full
// dataset and reused by every iteration; iteration i resamples d with its own
// derived seed (and under boot_mode::model refits `fit` on the resample), so
// results are identical for any thread count. With mode none or n_it == 0 the
// aggregates all equal the single full-data curve. `fit` is required for
// boot_mode::model and ignored otherwise; a serial_only `fitted` predictor
// forces single-threaded execution.
boot_ale_curve bootstrap_ale(const predictor& fitted, const trainer* fit, const dataset& d,
                             const std::string& var, const boot_options& opt);

}  // namespace alekit
