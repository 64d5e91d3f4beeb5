#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "alekit/bootstrap.hpp"
#include "alekit/dataset.hpp"
#include "alekit/model.hpp"
#include "helpers.hpp"

using namespace alekit;

namespace {

struct constant final : predictor {
  std::vector<double> predict(const dataset& d) const override {
    return std::vector<double>(d.n_rows, 1.0);
  }
};

struct throwing_trainer final : trainer {
  std::shared_ptr<const predictor> fit(const dataset&) const override {
    throw std::runtime_error("boom");
  }
  std::string description() const override { return "throwing"; }
};

}  // namespace

TEST_CASE("pointwise aggregation follows the shared quantile convention") {
  aggregate_summary s = aggregate({1, 2, 3, 4, 5}, 0.95);
  CHECK(s.mean == 3.0);
  CHECK(s.median == 3.0);
  CHECK(s.lo == 1.1);
  CHECK(s.hi == 4.9);

  aggregate_summary t = aggregate({0, 10}, 0.5);
  CHECK(t.lo == 2.5);
  CHECK(t.hi == 7.5);
  CHECK(t.median == 5.0);

  CHECK(contains(error_message<std::invalid_argument>([] { aggregate({}, 0.95); }),
                 "empty"));
  CHECK(contains(error_message<std::invalid_argument>([] { aggregate({1.0}, 1.0); }),
                 "ci_level"));
  CHECK(contains(error_message<std::invalid_argument>([] { aggregate({1.0}, 0.0); }),
                 "ci_level"));
}

TEST_CASE("no iterations means the aggregates are the single full-data curve") {
  dataset d = load_csv(fixture_path("linear.csv"), "y");
  auto m = fit_ols(d);

  boot_options opt;
  opt.mode = boot_mode::none;
  opt.keep_iterations = true;
  boot_ale_curve c = bootstrap_ale(*m, nullptr, d, "x1", opt);

  CHECK(c.n_it == 0);
  CHECK(c.ale_y_mean == c.ale_y_median);
  CHECK(c.ale_y_mean == c.ale_y_lo);
  CHECK(c.ale_y_mean == c.ale_y_hi);
  CHECK(c.per_iteration.size() == 1);
  CHECK(c.per_iteration[0] == c.ale_y_mean);
  CHECK(c.per_iteration_n[0] == c.ale_n);

  // n_it is ignored when the mode samples nothing
  opt.n_it = 50;
  boot_ale_curve c2 = bootstrap_ale(*m, nullptr, d, "x1", opt);
  CHECK(c2.n_it == 0);
  CHECK(c2.ale_y_mean == c.ale_y_mean);
}

TEST_CASE("resampled curves share the full-data grid and counts") {
  dataset d = load_csv(fixture_path("step_noise.csv"), "y");
  auto m = fit_tree(d, 6, 2);

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 12;
  opt.seed = 3;
  opt.keep_iterations = true;
  boot_ale_curve c = bootstrap_ale(*m, nullptr, d, "x", opt);

  CHECK(c.x == compute_intervals(d, "x", opt.max_bins));
  ale_curve full = compute_ale(*m, d, "x", c.x);
  CHECK(c.ale_n == full.ale_n);
  CHECK(c.per_iteration.size() == 12);
  for (const auto& row : c.per_iteration) CHECK(row.size() == c.x.size());
}

TEST_CASE("every iteration is centered under its own resample counts") {
  dataset d = load_csv(fixture_path("linear.csv"), "y");
  auto m = fit_ols(d);

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 10;
  opt.seed = 17;
  opt.keep_iterations = true;
  boot_ale_curve c = bootstrap_ale(*m, nullptr, d, "x2", opt);

  for (std::size_t i = 0; i < c.per_iteration.size(); ++i) {
    double s = 0.0;
    double maxy = 1.0;
    std::size_t total = 0;
    for (std::size_t j = 0; j < c.per_iteration[i].size(); ++j) {
      s += static_cast<double>(c.per_iteration_n[i][j]) *
           (c.per_iteration[i][j] - c.center_value);
      maxy = std::max(maxy, std::fabs(c.per_iteration[i][j]));
      total += c.per_iteration_n[i][j];
    }
    CHECK(total == d.n_rows);
    CHECK(std::fabs(s) <= 1e-9 * static_cast<double>(d.n_rows) * maxy);
  }
}

TEST_CASE("aggregates are entrywise summaries of the kept iterations") {
  dataset d = load_csv(fixture_path("linear.csv"), "y");
  auto m = fit_tree(d, 4);

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 7;
  opt.seed = 2;
  opt.keep_iterations = true;
  boot_ale_curve c = bootstrap_ale(*m, nullptr, d, "x1", opt);

  for (std::size_t j = 0; j < c.x.size(); ++j) {
    std::vector<double> entry;
    for (std::size_t i = 0; i < c.per_iteration.size(); ++i)
      entry.push_back(c.per_iteration[i][j]);
    aggregate_summary s = aggregate(entry, opt.ci_level);
    CHECK(c.ale_y_mean[j] == s.mean);
    CHECK(c.ale_y_median[j] == s.median);
    CHECK(c.ale_y_lo[j] == s.lo);
    CHECK(c.ale_y_hi[j] == s.hi);
    CHECK(s.lo <= s.median);
    CHECK(s.median <= s.hi);
  }
}

TEST_CASE("results are identical for any thread count") {
  dataset d = load_csv(fixture_path("linear.csv"), "y");
  auto m = fit_tree(d, 5, 2);

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 24;
  opt.seed = 9;
  opt.keep_iterations = true;

  opt.n_threads = 1;
  boot_ale_curve a = bootstrap_ale(*m, nullptr, d, "x1", opt);
  opt.n_threads = 2;
  boot_ale_curve b = bootstrap_ale(*m, nullptr, d, "x1", opt);
  opt.n_threads = 8;
  boot_ale_curve c = bootstrap_ale(*m, nullptr, d, "x1", opt);

  CHECK(a.ale_y_mean == b.ale_y_mean);
  CHECK(a.ale_y_mean == c.ale_y_mean);
  CHECK(a.ale_y_lo == c.ale_y_lo);
  CHECK(a.ale_y_hi == c.ale_y_hi);
  CHECK(a.per_iteration == b.per_iteration);
  CHECK(a.per_iteration == c.per_iteration);
  CHECK(a.per_iteration_n == c.per_iteration_n);
}

TEST_CASE("refitting an exact linear rule matches the fixed-model run") {
  // the fixture is noiseless, so every refit recovers the same coefficients
  dataset d = load_csv(fixture_path("linear.csv"), "y");
  auto m = fit_ols(d);
  auto t = ols_trainer();

  boot_options opt;
  opt.n_it = 8;
  opt.seed = 5;
  opt.keep_iterations = true;

  opt.mode = boot_mode::data_only;
  boot_ale_curve fixed = bootstrap_ale(*m, nullptr, d, "x1", opt);
  opt.mode = boot_mode::model;
  boot_ale_curve refit = bootstrap_ale(*m, t.get(), d, "x1", opt);

  REQUIRE(fixed.per_iteration.size() == refit.per_iteration.size());
  for (std::size_t i = 0; i < fixed.per_iteration.size(); ++i)
    for (std::size_t j = 0; j < fixed.per_iteration[i].size(); ++j)
      CHECK(refit.per_iteration[i][j] ==
            doctest::Approx(fixed.per_iteration[i][j]).epsilon(1e-9));
}

TEST_CASE("wider confidence levels nest narrower ones") {
  dataset d = load_csv(fixture_path("step_noise.csv"), "y");
  auto m = fit_tree(d, 6, 2);

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 30;
  opt.seed = 21;
  opt.ci_level = 0.5;
  boot_ale_curve narrow = bootstrap_ale(*m, nullptr, d, "x", opt);
  opt.ci_level = 0.95;
  boot_ale_curve wide = bootstrap_ale(*m, nullptr, d, "x", opt);

  for (std::size_t j = 0; j < narrow.x.size(); ++j) {
    CHECK(wide.ale_y_lo[j] <= narrow.ale_y_lo[j]);
    CHECK(wide.ale_y_hi[j] >= narrow.ale_y_hi[j]);
  }
}

TEST_CASE("an external predictor runs single-threaded but still matches") {
  dataset d = parse_csv("x,y\n1,0\n2,0\n3,0\n4,0\n5,0\n6,0\n7,0\n8,0\n", "y");
  auto m = exec_predictor("tail -n +2");

  boot_options opt;
  opt.mode = boot_mode::data_only;
  opt.n_it = 5;
  opt.seed = 4;
  opt.keep_iterations = true;

  opt.n_threads = 1;
  boot_ale_curve a = bootstrap_ale(*m, nullptr, d, "x", opt);
  opt.n_threads = 8;
  boot_ale_curve b = bootstrap_ale(*m, nullptr, d, "x", opt);
  CHECK(a.ale_y_mean == b.ale_y_mean);
  CHECK(a.per_iteration == b.per_iteration);
}

TEST_CASE("option validation and failure reporting") {
  dataset d = parse_csv("x,y\n1,0\n2,0\n", "y");
  constant m;

  boot_options opt;
  opt.mode = boot_mode::model;
  CHECK(contains(error_message<std::invalid_argument>(
                     [&] { bootstrap_ale(m, nullptr, d, "x", opt); }),
                 "requires a trainer"));

  opt.mode = boot_mode::data_only;
  opt.ci_level = 1.5;
  CHECK(contains(error_message<std::invalid_argument>(
                     [&] { bootstrap_ale(m, nullptr, d, "x", opt); }),
                 "ci_level"));

  throwing_trainer bad;
  opt = {};
  opt.mode = boot_mode::model;
  opt.n_it = 3;
  std::string msg = error_message<std::runtime_error>(
      [&] { bootstrap_ale(m, &bad, d, "x", opt); });
  CHECK(contains(msg, "bootstrap iteration 0"));
  CHECK(contains(msg, "boom"));
}
