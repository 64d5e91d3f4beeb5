#include <cstdio>
#include <exception>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "alekit/analysis.hpp"

// Command-line front end: loads a CSV, fits (or wraps) a model, computes
// bootstrapped ALE curves with effect statistics and confidence regions for
// the chosen variables, and writes ale.json, stats.csv, regions.csv and
// optional plots into the output directory. Exit code 0 on success, 1 on
// usage errors, 2 on runtime failures.
int main(int argc, char** argv) {
  CLI::App app{"Model-agnostic accumulated-local-effects inference"};
  app.get_formatter()->column_width(34);

  alekit::analysis_config cfg;
  std::string mode_text = "none";

  app.add_option("--data", cfg.data_path, "CSV file to analyze")->required();
  app.add_option("--outcome", cfg.outcome, "name of the numeric outcome column")->required();
  app.add_option("--out", cfg.output_dir, "directory for result files")->required();
  app.add_option("--model", cfg.model,
                 "ols | tree:<max_depth>[,<min_leaf>] | exec:<command>")
      ->capture_default_str();
  app.add_option("--boot", mode_text, "bootstrap mode: none | data | model")
      ->check(CLI::IsMember({"none", "data", "model"}))
      ->capture_default_str();
  app.add_option("--n-it", cfg.n_it, "bootstrap iterations")->capture_default_str();
  app.add_option("--ci", cfg.ci_level, "confidence level in (0, 1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9))
      ->capture_default_str();
  app.add_option("--rand-it", cfg.rand_it,
                 "random reference variables for p-values and the band")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--vars", cfg.variables,
                 "variables to analyze (default: all predictors)")
      ->delimiter(',');
  app.add_flag("--plots", cfg.plots, "also write plots/<var>.svg");
  app.add_option("--threads", cfg.n_threads, "worker threads for bootstrap loops")
      ->capture_default_str();
  app.add_option("--max-bins", cfg.max_bins, "interval cap for numeric variables")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (mode_text == "data")
    cfg.mode = alekit::boot_mode::data_only;
  else if (mode_text == "model")
    cfg.mode = alekit::boot_mode::model;
  else
    cfg.mode = alekit::boot_mode::none;

  try {
    alekit::analysis_result result = alekit::run_analysis(cfg);
    for (const std::string& w : result.warnings)
      std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::fprintf(stderr, "wrote ale.json, stats.csv, regions.csv%s to %s\n",
                 cfg.plots ? ", plots/" : "", cfg.output_dir.c_str());
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
