#include "alekit/bootstrap.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "alekit/numeric.hpp"
#include "alekit/rng.hpp"

namespace alekit {

aggregate_summary aggregate(const std::vector<double>& values, double ci_level) {
  if (values.empty()) throw std::invalid_argument("aggregate of empty sample");
  if (!(ci_level > 0.0 && ci_level < 1.0))
    throw std::invalid_argument("ci_level must lie in (0, 1)");
  aggregate_summary s;
  s.mean = mean(values);
  s.median = median(values);
  s.lo = quantile_type7(values, (1.0 - ci_level) / 2.0);
  s.hi = quantile_type7(values, (1.0 + ci_level) / 2.0);
  return s;
}

boot_ale_curve bootstrap_ale(const predictor& fitted, const trainer* fit, const dataset& d,
                             const std::string& var, const boot_options& opt) {
  if (opt.mode == boot_mode::model && fit == nullptr)
    throw std::invalid_argument("model bootstrap requires a trainer");
  if (!(opt.ci_level > 0.0 && opt.ci_level < 1.0))
    throw std::invalid_argument("ci_level must lie in (0, 1)");

  ale_intervals iv = compute_intervals(d, var, opt.max_bins);
  double center_value = center_offset(d.y(), opt.centering);
  ale_curve full = center(compute_ale(fitted, d, var, iv), center_value);
  std::size_t k = full.ale_y.size();

  boot_ale_curve out;
  out.x = iv;
  out.ale_n = full.ale_n;
  out.ci_level = opt.ci_level;
  out.mode = opt.mode;
  out.center_value = center_value;

  std::size_t n_it = opt.mode == boot_mode::none ? 0 : opt.n_it;
  out.n_it = n_it;
  if (n_it == 0) {
    out.ale_y_mean = full.ale_y;
    out.ale_y_median = full.ale_y;
    out.ale_y_lo = full.ale_y;
    out.ale_y_hi = full.ale_y;
    if (opt.keep_iterations) {
      out.per_iteration.push_back(full.ale_y);
      out.per_iteration_n.push_back(full.ale_n);
    }
    return out;
  }

  std::vector<std::vector<double>> it_y(n_it);
  std::vector<std::vector<std::size_t>> it_n(n_it);

  // Iterations are embarrassingly parallel: each one draws its resample from
  // its own derived seed and writes into its own slot, so any partition over
  // threads produces identical results. A shared serial_only predictor caps
  // the pool at one thread.
  unsigned n_threads = opt.n_threads == 0 ? 1 : opt.n_threads;
  if (opt.mode != boot_mode::model &&
      fitted.concurrency() == concurrency_class::serial_only)
    n_threads = 1;
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n_it));

  struct failure {
    std::size_t iteration;
    std::exception_ptr error;
  };
  std::vector<failure> failures(n_threads);
  for (auto& f : failures) f.iteration = n_it;

  auto run_range = [&](std::size_t begin, std::size_t end, failure* fail) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        dataset di = resample(d, derive_stream_seed(opt.seed, i));
        std::shared_ptr<const predictor> refit;
        const predictor* model = &fitted;
        if (opt.mode == boot_mode::model) {
          refit = fit->fit(di);
          model = refit.get();
        }
        ale_curve ci = center(compute_ale(*model, di, var, iv), center_value);
        it_y[i] = std::move(ci.ale_y);
        it_n[i] = std::move(ci.ale_n);
      } catch (...) {
        fail->iteration = i;
        fail->error = std::current_exception();
        return;
      }
    }
  };

  if (n_threads <= 1) {
    run_range(0, n_it, &failures[0]);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (n_it + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::size_t begin = static_cast<std::size_t>(t) * chunk;
      std::size_t end = std::min(begin + chunk, n_it);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, &failures[t]);
    }
    for (auto& th : pool) th.join();
  }

  const failure* worst = nullptr;
  for (const auto& f : failures)
    if (f.error && (worst == nullptr || f.iteration < worst->iteration)) worst = &f;
  if (worst) {
    try {
      std::rethrow_exception(worst->error);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "bootstrap iteration " << worst->iteration << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
  }

  out.ale_y_mean.resize(k);
  out.ale_y_median.resize(k);
  out.ale_y_lo.resize(k);
  out.ale_y_hi.resize(k);
  std::vector<double> entry(n_it);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n_it; ++i) entry[i] = it_y[i][j];
    aggregate_summary s = aggregate(entry, opt.ci_level);
    out.ale_y_mean[j] = s.mean;
    out.ale_y_median[j] = s.median;
    out.ale_y_lo[j] = s.lo;
    out.ale_y_hi[j] = s.hi;
  }
  if (opt.keep_iterations) {
    out.per_iteration = std::move(it_y);
    out.per_iteration_n = std::move(it_n);
  }
  return out;
}

}  // namespace alekit
