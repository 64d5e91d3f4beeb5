#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace alekit {

// Quantile with linear interpolation between order statistics (R's default
// "type 7": h = (n-1)p). Every quantile in the engine goes through this one
// function so medians, bootstrap CIs and band bounds all share a convention.
inline double quantile_type7(std::vector<double> xs, double p) {
  if (xs.empty()) throw std::invalid_argument("quantile of empty sample");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile probability outside [0, 1]");
  std::sort(xs.begin(), xs.end());
  double h = static_cast<double>(xs.size() - 1) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[lo + 1] - xs[lo]);
}

inline double median(const std::vector<double>& xs) {
  return quantile_type7(xs, 0.5);
}

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace alekit
