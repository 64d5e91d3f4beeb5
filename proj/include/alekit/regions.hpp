#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "alekit/bootstrap.hpp"
#include "alekit/effect_stats.hpp"

namespace alekit {

// Verdict for one curve entry: the whole confidence interval is below the
// band, above it, or touches it. Unbootstrapped curves have lo == hi, so the
// point value decides.
enum class band_relation { below, overlap, above };

const char* to_string(band_relation r);

band_relation classify_relative_to_band(double ci_lo, double ci_hi, const aler_band& band);

// Normalized slope of a run: rise over the outcome range divided by the run
// over the x domain, 0 for single-point runs. A trend of 1 means the effect
// climbs through the outcome's range as fast as x crosses its own.
double trend(double start_x, double end_x, double start_y, double end_y, double x_range,
             double y_range);

// One maximal run of consecutive grid entries sharing a verdict.
struct numeric_region {
  double start_x = 0.0;
  double end_x = 0.0;
  double x_span = 0.0;
  std::size_t n = 0;
  double n_pct = 0.0;
  double start_y = 0.0;
  double end_y = 0.0;
  double trend = 0.0;
  band_relation relation = band_relation::overlap;
};

// Categorical variables have no adjacency, so each level is its own region.
struct categorical_region {
  std::string level;
  std::size_t n = 0;
  double n_pct = 0.0;
  double y = 0.0;
  band_relation relation = band_relation::overlap;
};

// Run-length encodes the banded verdicts of a numeric curve. y values come
// from the bootstrap-mean curve; n sums the full-data ale_n over the run;
// y_range is the display normalizer for trend (the outcome's data range).
std::vector<numeric_region> regions_numeric(const boot_ale_curve& curve, const aler_band& band,
                                            double y_range);

std::vector<categorical_region> regions_categorical(const boot_ale_curve& curve,
                                                    const aler_band& band);

}  // namespace alekit
