#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alekit/bootstrap.hpp"
#include "alekit/dataset.hpp"
#include "alekit/effect_stats.hpp"
#include "alekit/regions.hpp"

namespace alekit {

// One full run of the engine, as driven from the command line. model picks the
// trainer: "ols", "tree:<max_depth>[,<min_leaf>]", or "exec:<command>" for an
// external model (which cannot be retrained, so boot_mode::model and rand_it
// > 0 are rejected for it). An empty `variables` list means every predictor.
struct analysis_config {
  std::string data_path;
  std::string outcome;
  std::string model = "ols";
  boot_mode mode = boot_mode::none;
  std::size_t n_it = 100;
  double ci_level = 0.95;
  std::size_t rand_it = 0;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::vector<std::string> variables;
  bool plots = false;
  unsigned n_threads = 1;
  std::size_t max_bins = 100;
};

struct variable_analysis {
  std::string name;
  column_kind kind = column_kind::numeric;
  boot_ale_curve curve;
  ale_stats stats;
  std::vector<numeric_region> numeric_regions;
  std::vector<categorical_region> categorical_regions;
};

struct analysis_result {
  dataset data;
  std::string model_description;
  double center_value = 0.0;
  aler_band band;
  bool band_from_references = false;
  std::vector<variable_analysis> variables;
  std::vector<std::string> warnings;
};

// Pure compute half: everything except file output.
analysis_result analyze(const analysis_config& cfg);

// Writes ale.json, stats.csv, regions.csv and (on request) plots/<var>.svg
// into cfg.output_dir, creating it if needed. Identical configs produce
// byte-identical files.
void write_outputs(const analysis_result& result, const analysis_config& cfg);

// analyze + write_outputs.
analysis_result run_analysis(const analysis_config& cfg);

}  // namespace alekit
