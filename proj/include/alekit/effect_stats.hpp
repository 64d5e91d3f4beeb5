#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alekit/bootstrap.hpp"
#include "alekit/dataset.hpp"
#include "alekit/model.hpp"

namespace alekit {

// Effect-size measures on a zero-centered ALE curve. `aled` is the mean
// absolute deviation of the curve from zero, weighted by how many rows sit at
// each entry; `aler` is the curve's raw swing (min is always <= 0 and max >= 0
// because the weighted mean is zero).
double aled(const std::vector<double>& ale_y0, const std::vector<std::size_t>& ale_n);

struct value_range {
  double min = 0.0;
  double max = 0.0;
};
value_range aler(const std::vector<double>& ale_y0);

// Maps zero-centered ALE values onto a percentile scale of the centred
// outcome: a value v > 0 becomes +50 * ECDF over the nonnegative centred
// outcome, v < 0 becomes -50 * ECDF of the negated strictly negative side, so
// +/-50 mean "as far as the outcome ever gets from its median". Values inside
// the gap between the largest negative and smallest positive centred outcome
// carry no displacement and map to 0; a side with no mass treats its gap edge
// as unbounded.
std::vector<double> normalize_ale_y(const std::vector<double>& y,
                                    const std::vector<double>& values);

// Empirical p-values against a sorted reference distribution, with the
// plus-one correction that keeps them off exact zero.
double p_value_upper(const std::vector<double>& sorted_ref, double observed);
double p_value_lower(const std::vector<double>& sorted_ref, double observed);

// Reference distributions of the six statistics across n_rand injected
// standard-normal variables, each sorted ascending.
struct random_reference {
  std::size_t n_rand = 0;
  std::vector<double> aled;
  std::vector<double> aler_min;
  std::vector<double> aler_max;
  std::vector<double> naled;
  std::vector<double> naler_min;
  std::vector<double> naler_max;
};

struct random_reference_options {
  boot_mode mode = boot_mode::none;
  std::size_t n_rand = 500;
  std::size_t n_it = 0;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
  std::size_t max_bins = 100;
  center_kind centering = center_kind::median;
  unsigned n_threads = 1;
};

// For r = 0..n_rand-1: append a fresh seeded standard-normal column, refit the
// trainer on the augmented data, and record that column's six statistics. The
// result is what "no real effect" looks like under this exact model and data,
// and is the yardstick for p-values and the ALER band.
random_reference random_stat_distributions(const trainer& t, const dataset& d,
                                           const random_reference_options& opt);

// The ALER band: the interval around the display center that random variables'
// effects stay inside at the given confidence levels. lower uses the (1-level)
// quantile of the aler_min reference, upper the level quantile of aler_max;
// the outer pair repeats this at outer_level.
struct aler_band {
  double level = 0.95;
  double outer_level = 0.99;
  double center = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double outer_lower = 0.0;
  double outer_upper = 0.0;
};

aler_band compute_aler_band(const random_reference& ref, double center, double level = 0.95,
                            double outer_level = 0.99);

// Zero-width fallback when no random references were computed; every
// non-degenerate CI then reads as below or above.
aler_band degenerate_band(double center);

// Bootstrap summary of one statistic. estimate repeats mean (the table format
// carries both); p_value is present only when references were supplied.
struct stat_summary {
  double estimate = 0.0;
  double conf_low = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double conf_high = 0.0;
  double p_value = 0.0;
  bool has_p_value = false;
};

struct ale_stats {
  stat_summary aled;
  stat_summary aler_min;
  stat_summary aler_max;
  stat_summary naled;
  stat_summary naler_min;
  stat_summary naler_max;

  static constexpr std::size_t count = 6;
  static const char* name(std::size_t i);
  const stat_summary& at(std::size_t i) const;
};

// Computes the six statistics for every bootstrap iteration of `curve` (on the
// iteration's zero-centered values, normalization against the outcome y), then
// summarizes across iterations at the curve's CI level. The curve must have
// been built with keep_iterations.
ale_stats compute_stats(const boot_ale_curve& curve, const std::vector<double>& y,
                        const random_reference* ref = nullptr);

}  // namespace alekit
