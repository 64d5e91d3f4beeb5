// Acceptance gate: ten checks, one line and one exit-code bit each. Every
// check carries its own runtime budget and fails when it blows it.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "alekit/analysis.hpp"
#include "alekit/bootstrap.hpp"
#include "alekit/effect_stats.hpp"
#include "alekit/model.hpp"
#include "alekit/regions.hpp"
#include "alekit/rng.hpp"
#include "helpers.hpp"

using namespace alekit;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

struct check_outcome {
  bool pass = false;
  std::string detail;
  double elapsed_ms = 0.0;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool close_abs(double got, double want, double tol, std::string& detail,
               const std::string& label) {
  if (std::fabs(got - want) <= tol) return true;
  detail += " " + label + "=" + fmt(got) + " (want " + fmt(want) + " +/- " + fmt(tol) + ")";
  return false;
}

bool close_rel(double got, double want, double rel, std::string& detail,
               const std::string& label) {
  if (std::fabs(got - want) <= rel * std::fabs(want)) return true;
  detail += " " + label + "=" + fmt(got) + " (want " + fmt(want) + " +/- " + fmt(100 * rel) +
            "%)";
  return false;
}

// 1. Effect sizes on a two-level curve reproduce the published-style summary
//    numbers from the level counts and endpoint values alone.
check_outcome criterion_two_level_arithmetic() {
  check_outcome r;
  auto t0 = clock_type::now();
  double d = aled({0.421, -0.344}, {70, 90});
  double weighted_norm = aled({6.069, -4.261}, {70, 90});
  r.elapsed_ms = ms_since(t0);

  r.pass = true;
  if (!close_abs(d, 0.376, 0.01, r.detail, "deviation")) r.pass = false;
  if (!close_abs(weighted_norm, 5.029, 0.05, r.detail, "weighted_norm")) r.pass = false;
  if (r.elapsed_ms > 1.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

namespace c2 {

// Builds a four-entry curve embedding one run inside the full x domain, with
// sentinel entries on both sides forcing the run to stay maximal.
struct run_spec {
  double start_x, end_x;
  double start_y, end_y;
  band_relation rel;
  std::size_t n;
};

numeric_region extract_run(const run_spec& spec, double domain_lo, double domain_hi,
                           std::size_t n_total, double y_range) {
  // Band chosen so y values below 11 read below, inside [11, 15] overlap, and
  // above 15 read above; CIs are degenerate points except where nudged.
  aler_band band;
  band.lower = 11.0;
  band.upper = 15.0;
  band.outer_lower = band.lower;
  band.outer_upper = band.upper;

  auto y_for = [&](band_relation rel) {
    switch (rel) {
      case band_relation::below: return 5.0;
      case band_relation::overlap: return 13.0;
      case band_relation::above: return 16.0;
    }
    return 13.0;
  };
  band_relation sentinel =
      spec.rel == band_relation::overlap ? band_relation::below : band_relation::overlap;
  band_relation tail =
      spec.rel == band_relation::overlap ? band_relation::above : band_relation::overlap;

  boot_ale_curve curve;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<band_relation> rels;
  if (spec.start_x > domain_lo) {
    xs.push_back(domain_lo);
    ys.push_back(y_for(sentinel));
    rels.push_back(sentinel);
  }
  xs.push_back(spec.start_x);
  ys.push_back(spec.start_y);
  rels.push_back(spec.rel);
  xs.push_back(spec.end_x);
  ys.push_back(spec.end_y);
  rels.push_back(spec.rel);
  if (spec.end_x < domain_hi) {
    xs.push_back(domain_hi);
    ys.push_back(y_for(tail));
    rels.push_back(tail);
  }

  curve.x.boundaries = xs;
  curve.ale_y_mean = ys;
  curve.ale_y_median = ys;
  curve.ale_y_lo = ys;
  curve.ale_y_hi = ys;

  // Split the run's row count over its two entries and park the remainder on
  // the sentinels so the totals work out.
  std::vector<std::size_t> n(xs.size(), 0);
  std::size_t run_first = spec.start_x > domain_lo ? 1 : 0;
  n[run_first] = spec.n / 2;
  n[run_first + 1] = spec.n - spec.n / 2;
  std::size_t rest = n_total - spec.n;
  if (run_first > 0) {
    n[0] = rest / 2;
    rest -= rest / 2;
  }
  n[xs.size() - 1] += rest;
  curve.ale_n = n;

  std::vector<numeric_region> regions = regions_numeric(curve, band, y_range);
  for (const numeric_region& reg : regions)
    if (reg.relation == spec.rel && reg.start_x == spec.start_x && reg.end_x == spec.end_x)
      return reg;
  throw std::runtime_error("embedded run not recovered");
}

}  // namespace c2

// 2. Region geometry (x_span, n_pct, trend) reproduces the reference values
//    for three runs over a 160-row outcome with range 15.46.
check_outcome criterion_region_geometry() {
  check_outcome r;
  const double domain_lo = -1.188;
  const double domain_hi = 0.831;
  const double y_range = 19.7 - 4.24;

  auto t0 = clock_type::now();
  numeric_region low = c2::extract_run({-1.188, -0.674, 5.714, 10.806, band_relation::below, 10},
                                       domain_lo, domain_hi, 160, y_range);
  numeric_region big =
      c2::extract_run({-0.467, 0.569, 11.337, 14.342, band_relation::overlap, 127}, domain_lo,
                      domain_hi, 160, y_range);
  numeric_region high = c2::extract_run({0.657, 0.718, 15.097, 15.277, band_relation::above, 6},
                                        domain_lo, domain_hi, 160, y_range);
  r.elapsed_ms = ms_since(t0);

  r.pass = true;
  if (!close_abs(low.x_span, 0.255, 0.002, r.detail, "x_span_low")) r.pass = false;
  if (!close_abs(big.x_span, 0.513, 0.002, r.detail, "x_span_big")) r.pass = false;
  if (!close_abs(high.x_span, 0.030, 0.002, r.detail, "x_span_high")) r.pass = false;
  if (!close_abs(low.n_pct, 0.062, 0.001, r.detail, "n_pct_low")) r.pass = false;
  if (!close_abs(big.n_pct, 0.794, 0.001, r.detail, "n_pct_big")) r.pass = false;
  if (!close_rel(low.trend, 1.343, 0.15, r.detail, "trend_low")) r.pass = false;
  if (!close_rel(big.trend, 0.393, 0.15, r.detail, "trend_big")) r.pass = false;
  if (!close_rel(high.trend, 0.400, 0.15, r.detail, "trend_high")) r.pass = false;
  if (r.elapsed_ms > 1.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 3. On random linear models the curve's slope between adjacent boundaries is
//    the coefficient exactly, and variables outside the model are flat zero.
check_outcome criterion_linear_exactness() {
  check_outcome r;
  auto t0 = clock_type::now();
  r.pass = true;

  for (std::uint64_t seedval = 1; seedval <= 100 && r.pass; ++seedval) {
    pcg32 rng(seedval, rng_purpose::general);
    std::size_t n = 30 + rng.next_below(471);
    std::size_t k = 1 + rng.next_below(4);

    std::vector<double> beta(k);
    for (double& b : beta) b = 3.0 * rng.next_normal();
    double intercept = 2.0 * rng.next_normal();

    dataset d;
    d.n_rows = n;
    d.columns.resize(k + 1);
    std::vector<double> y(n, intercept);
    for (std::size_t j = 0; j < k; ++j) {
      column& c = d.columns[j];
      c.name = "v" + std::to_string(j);
      c.kind = column_kind::numeric;
      c.values.resize(n);
      double spread = 0.5 + rng.next_unit_half_open() * 2.0;
      for (std::size_t i = 0; i < n; ++i) {
        c.values[i] = spread * rng.next_normal();
        y[i] += beta[j] * c.values[i];
      }
    }
    column& out = d.columns[k];
    out.name = "y";
    out.kind = column_kind::numeric;
    out.values = y;
    d.outcome_index = k;

    auto model = fit_ols(d);
    for (std::size_t j = 0; j < k && r.pass; ++j) {
      ale_intervals iv = compute_intervals(d, d.columns[j].name);
      ale_curve curve = compute_ale_numeric(*model, d, d.columns[j].name, iv);
      for (std::size_t b = 1; b < iv.boundaries.size(); ++b) {
        double want = beta[j] * (iv.boundaries[b] - iv.boundaries[b - 1]);
        double got = curve.ale_y[b] - curve.ale_y[b - 1];
        if (std::fabs(got - want) > 1e-9) {
          r.pass = false;
          r.detail = " seed " + std::to_string(seedval) + " var " + std::to_string(j) +
                     " slope step " + fmt(got) + " want " + fmt(want);
          break;
        }
      }
    }

    dataset with_extra = append_random_column(d, "extra", seedval);
    ale_curve unused = compute_ale_numeric(
        *model, with_extra, "extra", compute_intervals(with_extra, "extra"));
    for (double v : unused.ale_y) {
      if (v != 0.0) {
        r.pass = false;
        r.detail = " seed " + std::to_string(seedval) + " unused variable effect " + fmt(v);
        break;
      }
    }
  }

  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 10000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 4. Every curve the bootstrap emits, in every mode, stays centered: the
//    resample-count-weighted deviations from the display center sum to zero.
check_outcome criterion_centering_conservation() {
  check_outcome r;
  auto t0 = clock_type::now();
  r.pass = true;

  struct job {
    const char* fixture;
    std::string model;
  };
  for (const job& jb : {job{"linear.csv", "ols"}, job{"step_noise.csv", "tree"}}) {
    dataset d = load_csv(fixture_path(jb.fixture), "y");
    std::shared_ptr<const trainer> t =
        jb.model == "ols" ? ols_trainer() : tree_trainer(6, 2);
    auto fitted = t->fit(d);

    for (boot_mode mode : {boot_mode::none, boot_mode::data_only, boot_mode::model}) {
      for (std::size_t ci : d.predictor_indices()) {
        const std::string& var = d.columns[ci].name;
        boot_options opt;
        opt.mode = mode;
        opt.n_it = 30;
        opt.seed = 11;
        opt.keep_iterations = true;
        opt.n_threads = 4;
        boot_ale_curve curve = bootstrap_ale(*fitted, t.get(), d, var, opt);

        for (std::size_t i = 0; i < curve.per_iteration.size() && r.pass; ++i) {
          double sum = 0.0;
          double max_abs = 0.0;
          double total = 0.0;
          for (std::size_t j = 0; j < curve.per_iteration[i].size(); ++j) {
            double dev = curve.per_iteration[i][j] - curve.center_value;
            sum += static_cast<double>(curve.per_iteration_n[i][j]) * dev;
            max_abs = std::max(max_abs, std::fabs(curve.per_iteration[i][j]));
            total += static_cast<double>(curve.per_iteration_n[i][j]);
          }
          double tol = 1e-9 * total * std::max(max_abs, 1.0);
          if (std::fabs(sum) > tol) {
            r.pass = false;
            r.detail = std::string(" ") + jb.fixture + " " + var + " iteration " +
                       std::to_string(i) + " residual " + fmt(sum);
          }
        }
        if (!r.pass) break;
      }
      if (!r.pass) break;
    }
    if (!r.pass) break;
  }

  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 10000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

namespace c5 {

// Quadratic-time restatement of the percentile mapping: no sorted searches,
// just counting passes over the outcome per value.
std::vector<double> counting_normalize(const std::vector<double>& y,
                                       const std::vector<double>& values) {
  std::vector<double> s = y;
  std::sort(s.begin(), s.end());
  double h = static_cast<double>(s.size() - 1) * 0.5;
  std::size_t lo = static_cast<std::size_t>(h);
  double m = lo + 1 < s.size()
                 ? s[lo] + (h - static_cast<double>(lo)) * (s[lo + 1] - s[lo])
                 : s.back();

  std::vector<double> out;
  for (double v : values) {
    if (v == 0.0) {
      out.push_back(0.0);
      continue;
    }
    if (v > 0.0) {
      std::size_t n_side = 0, reached = 0, strictly = 0;
      for (double yi : y) {
        double c = yi - m;
        if (c < 0.0) continue;
        ++n_side;
        if (c <= v) {
          ++reached;
          if (c > 0.0) ++strictly;
        }
      }
      out.push_back(strictly == 0 ? 0.0
                                  : 50.0 * static_cast<double>(reached) /
                                        static_cast<double>(n_side));
    } else {
      std::size_t n_side = 0, reached = 0;
      for (double yi : y) {
        double c = yi - m;
        if (c >= 0.0) continue;
        ++n_side;
        if (c >= v) ++reached;
      }
      out.push_back(reached == 0 ? 0.0
                                 : -50.0 * static_cast<double>(reached) /
                                       static_cast<double>(n_side));
    }
  }
  return out;
}

}  // namespace c5

// 5. The percentile normalization agrees exactly with direct counting on a
//    thousand random outcome/value pairs full of ties and gap cases.
check_outcome criterion_normalization_oracle() {
  check_outcome r;
  auto t0 = clock_type::now();
  r.pass = true;

  pcg32 rng(505, rng_purpose::general);
  for (int rep = 0; rep < 1000 && r.pass; ++rep) {
    std::size_t ny = 1 + rng.next_below(40);
    std::vector<double> y(ny);
    if (rep % 11 == 0) {
      std::fill(y.begin(), y.end(), 2.0);  // constant outcome, both sides empty
    } else if (rep % 7 == 0) {
      for (double& v : y) v = std::fabs(rng.next_normal());  // one-sided
    } else {
      for (double& v : y) v = std::floor(rng.next_normal() * 3.0) / 2.0;
    }

    std::vector<double> values;
    std::size_t nv = 1 + rng.next_below(15);
    for (std::size_t i = 0; i < nv; ++i)
      values.push_back(std::floor(rng.next_normal() * 3.0) / 2.0);
    values.push_back(0.0);
    values.push_back(y[0] - y[ny / 2]);  // force outcome-lattice ties

    std::vector<double> got = normalize_ale_y(y, values);
    std::vector<double> want = c5::counting_normalize(y, values);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (got[i] != want[i]) {
        r.pass = false;
        r.detail = " rep " + std::to_string(rep) + " value " + fmt(values[i]) + " got " +
                   fmt(got[i]) + " want " + fmt(want[i]);
        break;
      }
    }
  }

  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 5000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 6. One seed, two thread counts, byte-identical files; and the bootstrap
//    evaluates every iteration on the grid computed from the full dataset.
check_outcome criterion_thread_determinism() {
  check_outcome r;
  auto t0 = clock_type::now();
  r.pass = true;
  scratch_dir scratch("acceptance_threads");

  struct job {
    const char* fixture;
    const char* model;
    boot_mode mode;
    std::size_t rand_it;
  };
  for (const job& jb : {job{"linear.csv", "ols", boot_mode::data_only, 20},
                        job{"step_noise.csv", "tree:6,2", boot_mode::model, 0}}) {
    analysis_config cfg;
    cfg.data_path = fixture_path(jb.fixture);
    cfg.outcome = "y";
    cfg.model = jb.model;
    cfg.mode = jb.mode;
    cfg.n_it = 100;
    cfg.rand_it = jb.rand_it;
    cfg.seed = 42;

    cfg.n_threads = 1;
    cfg.output_dir = (scratch.path / (std::string(jb.fixture) + ".t1")).string();
    run_analysis(cfg);
    cfg.n_threads = 8;
    cfg.output_dir = (scratch.path / (std::string(jb.fixture) + ".t8")).string();
    run_analysis(cfg);

    for (const char* name : {"ale.json", "stats.csv", "regions.csv"}) {
      std::string one =
          slurp((scratch.path / (std::string(jb.fixture) + ".t1") / name).string());
      std::string eight =
          slurp((scratch.path / (std::string(jb.fixture) + ".t8") / name).string());
      if (one.empty() || one != eight) {
        r.pass = false;
        r.detail = std::string(" ") + jb.fixture + "/" + name + " differs across threads";
      }
    }

    // fixed grids: the bootstrap's x is the full-data grid and every kept
    // iteration was evaluated on all of it
    dataset d = load_csv(fixture_path(jb.fixture), "y");
    std::shared_ptr<const trainer> t =
        std::string(jb.model) == "ols" ? ols_trainer() : tree_trainer(6, 2);
    auto fitted = t->fit(d);
    for (std::size_t ci : d.predictor_indices()) {
      const std::string& var = d.columns[ci].name;
      boot_options opt;
      opt.mode = jb.mode;
      opt.n_it = 100;
      opt.seed = 42;
      opt.keep_iterations = true;
      opt.n_threads = 8;
      boot_ale_curve curve = bootstrap_ale(*fitted, t.get(), d, var, opt);
      if (!(curve.x == compute_intervals(d, var, opt.max_bins))) {
        r.pass = false;
        r.detail = " grid drifted for " + var;
      }
      for (const auto& row : curve.per_iteration)
        if (row.size() != curve.x.size()) {
          r.pass = false;
          r.detail = " iteration row off-grid for " + var;
        }
    }
    if (!r.pass) break;
  }

  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 30000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 7. Injected pure-noise probes are not flagged: their normalized-deviation
//    p-value clears 0.05 in at least 18 of 20 master seeds, and the p-values
//    look uniform (KS statistic under 0.25).
check_outcome criterion_noise_calibration() {
  check_outcome r;
  auto t0 = clock_type::now();

  dataset d = load_csv(fixture_path("step_noise.csv"), "y");
  auto t = ols_trainer();
  const std::size_t n_rand = 500;

  std::vector<double> pvals;
  int clear = 0;
  for (std::uint64_t master = 1; master <= 20; ++master) {
    random_reference_options ro;
    ro.mode = boot_mode::none;
    ro.n_rand = n_rand;
    ro.n_it = 0;
    ro.seed = master;
    ro.n_threads = 8;
    random_reference ref = random_stat_distributions(*t, d, ro);

    // The probe is one more variable drawn and processed exactly like the
    // references, using the next derivation index after them.
    dataset probed = append_random_column(d, "probe", derive_stream_seed(master, n_rand));
    auto fitted = t->fit(probed);
    boot_options bo;
    bo.mode = boot_mode::none;
    bo.n_it = 0;
    bo.seed = derive_stream_seed(master, n_rand);
    bo.keep_iterations = true;
    boot_ale_curve curve = bootstrap_ale(*fitted, t.get(), probed, "probe", bo);
    ale_stats stats = compute_stats(curve, probed.y(), &ref);

    double p = stats.naled.p_value;
    pvals.push_back(p);
    if (p > 0.05) ++clear;
  }

  std::sort(pvals.begin(), pvals.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < pvals.size(); ++i) {
    double fn_hi = static_cast<double>(i + 1) / static_cast<double>(pvals.size());
    double fn_lo = static_cast<double>(i) / static_cast<double>(pvals.size());
    ks = std::max(ks, std::max(fn_hi - pvals[i], pvals[i] - fn_lo));
  }

  r.pass = clear >= 18 && ks < 0.25;
  r.detail = " p>0.05 in " + std::to_string(clear) + "/20 seeds, KS " + fmt(ks);
  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 300000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 8. Refitting per resample admits more uncertainty than resampling alone:
//    mean CI width under the model bootstrap beats data-only, over 10 seeds.
check_outcome criterion_bootstrap_separation() {
  check_outcome r;
  auto t0 = clock_type::now();

  dataset d = load_csv(fixture_path("step_noise.csv"), "y");
  auto t = tree_trainer(8, 2);
  auto fitted = t->fit(d);

  double width_data = 0.0;
  double width_model = 0.0;
  std::size_t entries_data = 0;
  std::size_t entries_model = 0;
  for (std::uint64_t seedval = 1; seedval <= 10; ++seedval) {
    for (boot_mode mode : {boot_mode::data_only, boot_mode::model}) {
      for (std::size_t ci : d.predictor_indices()) {
        boot_options opt;
        opt.mode = mode;
        opt.n_it = 50;
        opt.seed = seedval;
        opt.n_threads = 8;
        boot_ale_curve curve = bootstrap_ale(*fitted, t.get(), d, d.columns[ci].name, opt);
        for (std::size_t j = 0; j < curve.ale_y_hi.size(); ++j) {
          double w = curve.ale_y_hi[j] - curve.ale_y_lo[j];
          if (mode == boot_mode::data_only) {
            width_data += w;
            ++entries_data;
          } else {
            width_model += w;
            ++entries_model;
          }
        }
      }
    }
  }
  width_data /= static_cast<double>(entries_data);
  width_model /= static_cast<double>(entries_model);

  r.pass = width_model > width_data;
  r.detail = " mean width model " + fmt(width_model) + " vs data-only " + fmt(width_data);
  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 120000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 9. Run-length coding of verdicts round-trips against a pointwise classify
//    plus manual grouping on random curve/band combinations, field for field.
check_outcome criterion_region_roundtrip() {
  check_outcome r;
  auto t0 = clock_type::now();
  r.pass = true;

  pcg32 rng(909, rng_purpose::general);
  for (int rep = 0; rep < 200 && r.pass; ++rep) {
    std::size_t k = 1 + rng.next_below(15);
    boot_ale_curve curve;
    double x = -3.0;
    for (std::size_t j = 0; j < k; ++j) {
      x += 0.25 + rng.next_unit_half_open();
      curve.x.boundaries.push_back(x);
      double mid = 2.5 * rng.next_normal();
      double half = std::fabs(rng.next_normal());
      curve.ale_y_mean.push_back(mid);
      curve.ale_y_median.push_back(mid);
      curve.ale_y_lo.push_back(mid - half);
      curve.ale_y_hi.push_back(mid + half);
      curve.ale_n.push_back(rng.next_below(20));
    }
    aler_band band;
    band.lower = -std::fabs(rng.next_normal());
    band.upper = std::fabs(rng.next_normal());
    double y_range = rep % 17 == 0 ? 0.0 : 0.5 + rng.next_unit_half_open() * 10.0;

    std::vector<numeric_region> got = regions_numeric(curve, band, y_range);

    // independent grouping
    std::vector<band_relation> rel(k);
    for (std::size_t j = 0; j < k; ++j)
      rel[j] = classify_relative_to_band(curve.ale_y_lo[j], curve.ale_y_hi[j], band);
    std::size_t total_n = 0;
    for (std::size_t nj : curve.ale_n) total_n += nj;
    double x_range = curve.x.boundaries.back() - curve.x.boundaries.front();

    std::vector<numeric_region> want;
    std::size_t start = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (j == k || rel[j] != rel[start]) {
        numeric_region reg;
        reg.start_x = curve.x.boundaries[start];
        reg.end_x = curve.x.boundaries[j - 1];
        reg.x_span = x_range == 0.0 ? 0.0 : (reg.end_x - reg.start_x) / x_range;
        for (std::size_t m = start; m < j; ++m) reg.n += curve.ale_n[m];
        reg.n_pct = total_n == 0
                        ? 0.0
                        : static_cast<double>(reg.n) / static_cast<double>(total_n);
        reg.start_y = curve.ale_y_mean[start];
        reg.end_y = curve.ale_y_mean[j - 1];
        reg.trend = trend(reg.start_x, reg.end_x, reg.start_y, reg.end_y, x_range, y_range);
        reg.relation = rel[start];
        want.push_back(reg);
        start = j;
      }
    }

    if (got.size() != want.size()) {
      r.pass = false;
      r.detail = " rep " + std::to_string(rep) + " run count " + std::to_string(got.size()) +
                 " want " + std::to_string(want.size());
      break;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].start_x != want[i].start_x || got[i].end_x != want[i].end_x ||
          got[i].x_span != want[i].x_span || got[i].n != want[i].n ||
          got[i].n_pct != want[i].n_pct || got[i].start_y != want[i].start_y ||
          got[i].end_y != want[i].end_y || got[i].trend != want[i].trend ||
          got[i].relation != want[i].relation) {
        r.pass = false;
        r.detail = " rep " + std::to_string(rep) + " region " + std::to_string(i) + " differs";
        break;
      }
    }
  }

  r.elapsed_ms = ms_since(t0);
  if (r.elapsed_ms > 5000.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

// 10. The shared quantile convention, pinned to exact doubles.
check_outcome criterion_quantile_convention() {
  check_outcome r;
  auto t0 = clock_type::now();
  aggregate_summary s = aggregate({1, 2, 3, 4, 5}, 0.95);
  r.elapsed_ms = ms_since(t0);
  r.pass = s.lo == 1.1 && s.hi == 4.9 && s.mean == 3.0 && s.median == 3.0;
  if (!r.pass)
    r.detail = " lo " + fmt(s.lo) + " hi " + fmt(s.hi) + " mean " + fmt(s.mean) + " median " +
               fmt(s.median);
  if (r.elapsed_ms > 1.0) {
    r.pass = false;
    r.detail += " over budget";
  }
  return r;
}

}  // namespace

int main() {
  struct entry {
    const char* what;
    check_outcome (*run)();
  };
  const entry entries[] = {
      {"two-level effect-size arithmetic", criterion_two_level_arithmetic},
      {"confidence-region geometry reference values", criterion_region_geometry},
      {"linear-model slope exactness and unused-variable nullity", criterion_linear_exactness},
      {"centering conservation across modes and fixtures", criterion_centering_conservation},
      {"percentile normalization vs counting oracle", criterion_normalization_oracle},
      {"thread-count determinism and fixed grids", criterion_thread_determinism},
      {"noise-probe p-value calibration", criterion_noise_calibration},
      {"model bootstrap wider than data-only", criterion_bootstrap_separation},
      {"region coding vs pointwise oracle", criterion_region_roundtrip},
      {"quantile aggregation convention", criterion_quantile_convention},
  };

  int failures = 0;
  int index = 0;
  for (const entry& e : entries) {
    ++index;
    check_outcome out;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string(" exception: ") + ex.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.1f ms)%s\n", out.pass ? "PASS" : "FAIL", index,
                e.what, out.elapsed_ms, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
