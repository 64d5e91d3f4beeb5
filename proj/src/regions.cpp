#include "alekit/regions.hpp"

#include <stdexcept>

namespace alekit {

const char* to_string(band_relation r) {
  switch (r) {
    case band_relation::below: return "below";
    case band_relation::overlap: return "overlap";
    case band_relation::above: return "above";
  }
  throw std::logic_error("unreachable");
}

band_relation classify_relative_to_band(double ci_lo, double ci_hi, const aler_band& band) {
  if (ci_hi < band.lower) return band_relation::below;
  if (ci_lo > band.upper) return band_relation::above;
  return band_relation::overlap;
}

double trend(double start_x, double end_x, double start_y, double end_y, double x_range,
             double y_range) {
  if (start_x == end_x) return 0.0;
  if (x_range == 0.0 || y_range == 0.0) return 0.0;
  return ((end_y - start_y) / y_range) / ((end_x - start_x) / x_range);
}

std::vector<numeric_region> regions_numeric(const boot_ale_curve& curve, const aler_band& band,
                                            double y_range) {
  if (curve.x.categorical)
    throw std::invalid_argument("numeric regions on a categorical curve");
  const std::vector<double>& x = curve.x.boundaries;
  std::size_t k = x.size();
  if (k == 0) throw std::invalid_argument("regions of an empty curve");

  std::size_t n_rows = 0;
  for (std::size_t n : curve.ale_n) n_rows += n;
  double x_range = x.back() - x.front();

  std::vector<numeric_region> out;
  std::size_t run_start = 0;
  band_relation run_rel =
      classify_relative_to_band(curve.ale_y_lo[0], curve.ale_y_hi[0], band);
  auto flush = [&](std::size_t run_end) {
    numeric_region r;
    r.start_x = x[run_start];
    r.end_x = x[run_end];
    r.x_span = x_range == 0.0 ? 0.0 : (r.end_x - r.start_x) / x_range;
    for (std::size_t j = run_start; j <= run_end; ++j) r.n += curve.ale_n[j];
    r.n_pct = n_rows == 0 ? 0.0 : static_cast<double>(r.n) / static_cast<double>(n_rows);
    r.start_y = curve.ale_y_mean[run_start];
    r.end_y = curve.ale_y_mean[run_end];
    r.trend = trend(r.start_x, r.end_x, r.start_y, r.end_y, x_range, y_range);
    r.relation = run_rel;
    out.push_back(r);
  };

  for (std::size_t j = 1; j < k; ++j) {
    band_relation rel = classify_relative_to_band(curve.ale_y_lo[j], curve.ale_y_hi[j], band);
    if (rel != run_rel) {
      flush(j - 1);
      run_start = j;
      run_rel = rel;
    }
  }
  flush(k - 1);
  return out;
}

std::vector<categorical_region> regions_categorical(const boot_ale_curve& curve,
                                                    const aler_band& band) {
  if (!curve.x.categorical)
    throw std::invalid_argument("categorical regions on a numeric curve");
  std::size_t n_rows = 0;
  for (std::size_t n : curve.ale_n) n_rows += n;

  std::vector<categorical_region> out;
  for (std::size_t k = 0; k < curve.x.levels.size(); ++k) {
    categorical_region r;
    r.level = curve.x.levels[k];
    r.n = curve.ale_n[k];
    r.n_pct = n_rows == 0 ? 0.0 : static_cast<double>(r.n) / static_cast<double>(n_rows);
    r.y = curve.ale_y_mean[k];
    r.relation = classify_relative_to_band(curve.ale_y_lo[k], curve.ale_y_hi[k], band);
    out.push_back(r);
  }
  return out;
}

}  // namespace alekit
