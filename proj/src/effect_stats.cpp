#include "alekit/effect_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "alekit/numeric.hpp"
#include "alekit/rng.hpp"

namespace alekit {

double aled(const std::vector<double>& ale_y0, const std::vector<std::size_t>& ale_n) {
  if (ale_y0.size() != ale_n.size())
    throw std::invalid_argument("ale_y and ale_n length mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ale_y0.size(); ++i) {
    num += std::abs(ale_y0[i] * static_cast<double>(ale_n[i]));
    den += static_cast<double>(ale_n[i]);
  }
  if (den == 0.0) throw std::invalid_argument("aled with no weighted entries");
  return num / den;
}

value_range aler(const std::vector<double>& ale_y0) {
  if (ale_y0.empty()) throw std::invalid_argument("aler of an empty curve");
  value_range r{ale_y0[0], ale_y0[0]};
  for (double v : ale_y0) {
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
  return r;
}

std::vector<double> normalize_ale_y(const std::vector<double>& y,
                                    const std::vector<double>& values) {
  if (y.empty()) throw std::invalid_argument("normalize against an empty outcome");
  double m = median(y);

  // Split the centred outcome into its negative side (negated, so larger means
  // farther below the median) and nonnegative side.
  std::vector<double> neg;
  std::vector<double> pos;
  for (double v : y) {
    double c = v - m;
    if (c < 0.0)
      neg.push_back(-c);
    else
      pos.push_back(c);
  }
  std::sort(neg.begin(), neg.end());
  std::sort(pos.begin(), pos.end());

  double band_lo = -std::numeric_limits<double>::infinity();
  double band_hi = std::numeric_limits<double>::infinity();
  if (!neg.empty()) band_lo = -neg.front();
  for (double p : pos)
    if (p > 0.0) { band_hi = p; break; }

  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (v == 0.0) continue;
    if (v > band_lo && v < band_hi) continue;  // inside the no-displacement gap
    if (v > 0.0) {
      auto it = std::upper_bound(pos.begin(), pos.end(), v);
      out[i] = 50.0 * static_cast<double>(it - pos.begin()) / static_cast<double>(pos.size());
    } else {
      auto it = std::upper_bound(neg.begin(), neg.end(), -v);
      out[i] = -50.0 * static_cast<double>(it - neg.begin()) / static_cast<double>(neg.size());
    }
  }
  return out;
}

double p_value_upper(const std::vector<double>& sorted_ref, double observed) {
  if (sorted_ref.empty()) throw std::invalid_argument("p-value against an empty reference");
  auto it = std::lower_bound(sorted_ref.begin(), sorted_ref.end(), observed);
  double count = static_cast<double>(sorted_ref.end() - it);
  return (count + 1.0) / (static_cast<double>(sorted_ref.size()) + 1.0);
}

double p_value_lower(const std::vector<double>& sorted_ref, double observed) {
  if (sorted_ref.empty()) throw std::invalid_argument("p-value against an empty reference");
  auto it = std::upper_bound(sorted_ref.begin(), sorted_ref.end(), observed);
  double count = static_cast<double>(it - sorted_ref.begin());
  return (count + 1.0) / (static_cast<double>(sorted_ref.size()) + 1.0);
}

const char* ale_stats::name(std::size_t i) {
  static const char* names[count] = {"aled",  "aler_min",  "aler_max",
                                     "naled", "naler_min", "naler_max"};
  return names[i];
}

const stat_summary& ale_stats::at(std::size_t i) const {
  const stat_summary* fields[count] = {&aled,  &aler_min,  &aler_max,
                                       &naled, &naler_min, &naler_max};
  return *fields[i];
}

namespace {

stat_summary summarize(const std::vector<double>& per_it, double ci_level) {
  stat_summary s;
  s.mean = mean(per_it);
  s.estimate = s.mean;
  s.median = median(per_it);
  s.conf_low = quantile_type7(per_it, (1.0 - ci_level) / 2.0);
  s.conf_high = quantile_type7(per_it, (1.0 + ci_level) / 2.0);
  return s;
}

}  // namespace

ale_stats compute_stats(const boot_ale_curve& curve, const std::vector<double>& y,
                        const random_reference* ref) {
  if (curve.per_iteration.empty())
    throw std::invalid_argument("statistics need a curve built with keep_iterations");
  std::size_t n_it = curve.per_iteration.size();

  std::vector<double> v_aled(n_it), v_aler_min(n_it), v_aler_max(n_it);
  std::vector<double> v_naled(n_it), v_naler_min(n_it), v_naler_max(n_it);
  std::vector<double> y0;
  for (std::size_t i = 0; i < n_it; ++i) {
    const std::vector<double>& yi = curve.per_iteration[i];
    const std::vector<std::size_t>& ni = curve.per_iteration_n[i];
    y0.assign(yi.size(), 0.0);
    for (std::size_t j = 0; j < yi.size(); ++j) y0[j] = yi[j] - curve.center_value;

    v_aled[i] = aled(y0, ni);
    value_range r = aler(y0);
    v_aler_min[i] = r.min;
    v_aler_max[i] = r.max;

    std::vector<double> norm = normalize_ale_y(y, y0);
    v_naled[i] = aled(norm, ni);
    value_range nr = aler(norm);
    v_naler_min[i] = nr.min;
    v_naler_max[i] = nr.max;
  }

  ale_stats out;
  out.aled = summarize(v_aled, curve.ci_level);
  out.aler_min = summarize(v_aler_min, curve.ci_level);
  out.aler_max = summarize(v_aler_max, curve.ci_level);
  out.naled = summarize(v_naled, curve.ci_level);
  out.naler_min = summarize(v_naler_min, curve.ci_level);
  out.naler_max = summarize(v_naler_max, curve.ci_level);

  if (ref != nullptr) {
    out.aled.p_value = p_value_upper(ref->aled, out.aled.estimate);
    out.aler_min.p_value = p_value_lower(ref->aler_min, out.aler_min.estimate);
    out.aler_max.p_value = p_value_upper(ref->aler_max, out.aler_max.estimate);
    out.naled.p_value = p_value_upper(ref->naled, out.naled.estimate);
    out.naler_min.p_value = p_value_lower(ref->naler_min, out.naler_min.estimate);
    out.naler_max.p_value = p_value_upper(ref->naler_max, out.naler_max.estimate);
    out.aled.has_p_value = out.aler_min.has_p_value = out.aler_max.has_p_value = true;
    out.naled.has_p_value = out.naler_min.has_p_value = out.naler_max.has_p_value = true;
  }
  return out;
}

random_reference random_stat_distributions(const trainer& t, const dataset& d,
                                           const random_reference_options& opt) {
  if (opt.n_rand == 0) throw std::invalid_argument("n_rand must be >= 1");

  // A reference column name that cannot collide with user data.
  std::string base = ".random_ref";
  std::string name = base;
  for (int suffix = 1; d.find(name) >= 0; ++suffix)
    name = base + "_" + std::to_string(suffix);

  std::vector<std::array<double, 6>> results(opt.n_rand);

  struct failure {
    std::size_t index;
    std::exception_ptr error;
  };
  unsigned n_threads = opt.n_threads == 0 ? 1 : opt.n_threads;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, opt.n_rand));
  std::vector<failure> failures(n_threads);
  for (auto& f : failures) f.index = opt.n_rand;

  auto run_range = [&](std::size_t begin, std::size_t end, failure* fail) {
    for (std::size_t r = begin; r < end; ++r) {
      try {
        std::uint64_t seed_r = derive_stream_seed(opt.seed, r);
        dataset dr = append_random_column(d, name, seed_r);
        std::shared_ptr<const predictor> model = t.fit(dr);

        boot_options bo;
        bo.mode = opt.mode;
        bo.n_it = opt.n_it;
        bo.ci_level = opt.ci_level;
        bo.seed = seed_r;
        bo.max_bins = opt.max_bins;
        bo.centering = opt.centering;
        bo.keep_iterations = true;
        bo.n_threads = 1;
        boot_ale_curve curve = bootstrap_ale(*model, &t, dr, name, bo);
        ale_stats s = compute_stats(curve, dr.y(), nullptr);
        results[r] = {s.aled.estimate,  s.aler_min.estimate,  s.aler_max.estimate,
                      s.naled.estimate, s.naler_min.estimate, s.naler_max.estimate};
      } catch (...) {
        fail->index = r;
        fail->error = std::current_exception();
        return;
      }
    }
  };

  if (n_threads <= 1) {
    run_range(0, opt.n_rand, &failures[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (opt.n_rand + n_threads - 1) / n_threads;
    for (unsigned w = 0; w < n_threads; ++w) {
      std::size_t begin = static_cast<std::size_t>(w) * chunk;
      std::size_t end = std::min(begin + chunk, opt.n_rand);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, &failures[w]);
    }
    for (auto& th : pool) th.join();
  }

  const failure* worst = nullptr;
  for (const auto& f : failures)
    if (f.error && (worst == nullptr || f.index < worst->index)) worst = &f;
  if (worst) {
    try {
      std::rethrow_exception(worst->error);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "random reference variable " << worst->index << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
  }

  random_reference ref;
  ref.n_rand = opt.n_rand;
  std::vector<double>* fields[6] = {&ref.aled,  &ref.aler_min,  &ref.aler_max,
                                    &ref.naled, &ref.naler_min, &ref.naler_max};
  for (std::size_t f = 0; f < 6; ++f) {
    fields[f]->resize(opt.n_rand);
    for (std::size_t r = 0; r < opt.n_rand; ++r) (*fields[f])[r] = results[r][f];
    std::sort(fields[f]->begin(), fields[f]->end());
  }
  return ref;
}

aler_band compute_aler_band(const random_reference& ref, double center, double level,
                            double outer_level) {
  if (!(level > 0.0 && level < 1.0) || !(outer_level > 0.0 && outer_level < 1.0))
    throw std::invalid_argument("band levels must lie in (0, 1)");
  if (ref.aler_min.empty() || ref.aler_max.empty())
    throw std::invalid_argument("band from an empty reference");
  aler_band b;
  b.level = level;
  b.outer_level = outer_level;
  b.center = center;
  b.lower = center + quantile_type7(ref.aler_min, 1.0 - level);
  b.upper = center + quantile_type7(ref.aler_max, level);
  b.outer_lower = center + quantile_type7(ref.aler_min, 1.0 - outer_level);
  b.outer_upper = center + quantile_type7(ref.aler_max, outer_level);
  return b;
}

aler_band degenerate_band(double center) {
  aler_band b;
  b.center = center;
  b.lower = b.upper = b.outer_lower = b.outer_upper = center;
  return b;
}

}  // namespace alekit
