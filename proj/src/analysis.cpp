#include "alekit/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "alekit/format.hpp"
#include "alekit/json_io.hpp"
#include "alekit/numeric.hpp"
#include "alekit/svg_plot.hpp"

namespace alekit {

namespace {

struct model_choice {
  std::shared_ptr<const predictor> fitted;
  std::shared_ptr<const trainer> fit;  // null for external models
  std::string description;
};

model_choice resolve_model(const std::string& spec, const dataset& d) {
  model_choice m;
  if (spec == "ols") {
    m.fit = ols_trainer();
  } else if (spec.rfind("tree:", 0) == 0) {
    std::string args = spec.substr(5);
    std::size_t comma = args.find(',');
    std::string depth_text = comma == std::string::npos ? args : args.substr(0, comma);
    std::string leaf_text = comma == std::string::npos ? "1" : args.substr(comma + 1);
    auto parse_count = [&](const std::string& s) {
      std::size_t pos = 0;
      long v = -1;
      try {
        v = std::stol(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || s.empty() || v < 0)
        throw std::invalid_argument("bad tree spec '" + spec +
                                    "', expected tree:<max_depth>[,<min_leaf>]");
      return v;
    };
    m.fit = tree_trainer(static_cast<int>(parse_count(depth_text)),
                         static_cast<std::size_t>(parse_count(leaf_text)));
  } else if (spec.rfind("exec:", 0) == 0) {
    std::string command = spec.substr(5);
    m.fitted = exec_predictor(command);
    m.description = "exec";
    return m;
  } else {
    throw std::invalid_argument("unknown model '" + spec +
                                "', expected ols, tree:<...> or exec:<command>");
  }
  m.fitted = m.fit->fit(d);
  m.description = m.fit->description();
  return m;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

const char* kind_text(column_kind k) {
  switch (k) {
    case column_kind::numeric: return "numeric";
    case column_kind::categorical: return "categorical";
    case column_kind::logical: return "logical";
  }
  return "";
}

const char* mode_text(boot_mode m) {
  switch (m) {
    case boot_mode::none: return "none";
    case boot_mode::data_only: return "data";
    case boot_mode::model: return "model";
  }
  return "";
}

ordered_json stat_json(const stat_summary& s) {
  ordered_json j;
  j["estimate"] = s.estimate;
  if (s.has_p_value)
    j["p_value"] = s.p_value;
  else
    j["p_value"] = nullptr;
  j["conf_low"] = s.conf_low;
  j["median"] = s.median;
  j["mean"] = s.mean;
  j["conf_high"] = s.conf_high;
  return j;
}

std::string render_ale_json(const analysis_result& r, const analysis_config& cfg) {
  ordered_json j;
  j["data"] = cfg.data_path;
  j["outcome"] = cfg.outcome;
  j["model"] = r.model_description;
  j["boot_mode"] = mode_text(cfg.mode);
  j["n_it"] = cfg.n_it;
  j["ci_level"] = cfg.ci_level;
  j["rand_it"] = cfg.rand_it;
  j["seed"] = cfg.seed;
  j["n_rows"] = r.data.n_rows;
  j["center"] = "median";
  j["center_value"] = r.center_value;

  if (r.band_from_references) {
    ordered_json b;
    b["level"] = r.band.level;
    b["outer_level"] = r.band.outer_level;
    b["center"] = r.band.center;
    b["lower"] = r.band.lower;
    b["upper"] = r.band.upper;
    b["outer_lower"] = r.band.outer_lower;
    b["outer_upper"] = r.band.outer_upper;
    j["band"] = b;
  } else {
    j["band"] = nullptr;
  }

  ordered_json vars = ordered_json::object();
  for (const variable_analysis& v : r.variables) {
    ordered_json e;
    e["kind"] = kind_text(v.kind);
    if (v.curve.x.categorical)
      e["ale_x"] = v.curve.x.levels;
    else
      e["ale_x"] = v.curve.x.boundaries;
    e["ale_n"] = v.curve.ale_n;
    e["ale_y_mean"] = v.curve.ale_y_mean;
    e["ale_y_median"] = v.curve.ale_y_median;
    e["ale_y_lo"] = v.curve.ale_y_lo;
    e["ale_y_hi"] = v.curve.ale_y_hi;
    ordered_json stats = ordered_json::object();
    for (std::size_t s = 0; s < ale_stats::count; ++s)
      stats[ale_stats::name(s)] = stat_json(v.stats.at(s));
    e["stats"] = stats;
    vars[v.name] = e;
  }
  j["variables"] = vars;
  return json_text(j);
}

std::string render_stats_csv(const analysis_result& r) {
  std::string out = "variable,statistic,estimate,p.value,conf.low,median,mean,conf.high\n";
  for (const variable_analysis& v : r.variables) {
    for (std::size_t s = 0; s < ale_stats::count; ++s) {
      const stat_summary& st = v.stats.at(s);
      out += csv_escape(v.name);
      out += ',';
      out += ale_stats::name(s);
      out += ',';
      out += format_double(st.estimate);
      out += ',';
      if (st.has_p_value) out += format_double(st.p_value);
      out += ',';
      out += format_double(st.conf_low);
      out += ',';
      out += format_double(st.median);
      out += ',';
      out += format_double(st.mean);
      out += ',';
      out += format_double(st.conf_high);
      out += '\n';
    }
  }
  return out;
}

std::string render_regions_csv(const analysis_result& r) {
  std::string out =
      "variable,kind,x,start_x,end_x,x_span,n,n_pct,y,start_y,end_y,trend,relative_to_mid\n";
  for (const variable_analysis& v : r.variables) {
    if (v.kind == column_kind::numeric) {
      for (const numeric_region& reg : v.numeric_regions) {
        out += csv_escape(v.name);
        out += ",numeric,,";
        out += format_double(reg.start_x);
        out += ',';
        out += format_double(reg.end_x);
        out += ',';
        out += format_double(reg.x_span);
        out += ',';
        out += std::to_string(reg.n);
        out += ',';
        out += format_double(reg.n_pct);
        out += ",,";
        out += format_double(reg.start_y);
        out += ',';
        out += format_double(reg.end_y);
        out += ',';
        out += format_double(reg.trend);
        out += ',';
        out += to_string(reg.relation);
        out += '\n';
      }
    } else {
      for (const categorical_region& reg : v.categorical_regions) {
        out += csv_escape(v.name);
        out += ",categorical,";
        out += csv_escape(reg.level);
        out += ",,,,";
        out += std::to_string(reg.n);
        out += ',';
        out += format_double(reg.n_pct);
        out += ',';
        out += format_double(reg.y);
        out += ",,,,";
        out += to_string(reg.relation);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace

analysis_result analyze(const analysis_config& cfg) {
  if (cfg.data_path.empty()) throw std::invalid_argument("no data file given");
  if (cfg.outcome.empty()) throw std::invalid_argument("no outcome column given");
  if (!(cfg.ci_level > 0.0 && cfg.ci_level < 1.0))
    throw std::invalid_argument("ci_level must lie in (0, 1)");

  analysis_result r;
  r.data = load_csv(cfg.data_path, cfg.outcome);
  model_choice model = resolve_model(cfg.model, r.data);
  r.model_description = model.description;

  if (model.fit == nullptr && cfg.mode == boot_mode::model)
    throw std::invalid_argument("external models cannot be retrained");
  if (model.fit == nullptr && cfg.rand_it > 0)
    throw std::invalid_argument(
        "external models cannot be retrained, so random references are unavailable");

  std::vector<std::string> vars = cfg.variables;
  if (vars.empty())
    for (std::size_t i : r.data.predictor_indices()) vars.push_back(r.data.columns[i].name);
  for (const std::string& v : vars) {
    if (v == cfg.outcome)
      throw std::invalid_argument("cannot compute effects for the outcome column '" + v + "'");
    r.data.require(v);
  }

  r.center_value = median(r.data.y());

  std::optional<random_reference> ref;
  if (cfg.rand_it > 0) {
    random_reference_options ro;
    ro.mode = boot_mode::none;
    ro.n_rand = cfg.rand_it;
    ro.n_it = 0;
    ro.ci_level = cfg.ci_level;
    ro.seed = cfg.seed;
    ro.max_bins = cfg.max_bins;
    ro.n_threads = cfg.n_threads;
    ref = random_stat_distributions(*model.fit, r.data, ro);
    r.band = compute_aler_band(*ref, r.center_value, cfg.ci_level);
    r.band_from_references = true;
  } else {
    r.band = degenerate_band(r.center_value);
    r.warnings.push_back(
        "rand_it is 0: no random references, the band has zero width and p-values are omitted");
  }

  const std::vector<double>& y = r.data.y();
  double y_range = *std::max_element(y.begin(), y.end()) -
                   *std::min_element(y.begin(), y.end());

  for (const std::string& name : vars) {
    variable_analysis v;
    v.name = name;
    v.kind = r.data.require(name).kind;

    boot_options bo;
    bo.mode = cfg.mode;
    bo.n_it = cfg.n_it;
    bo.ci_level = cfg.ci_level;
    bo.seed = cfg.seed;
    bo.max_bins = cfg.max_bins;
    bo.centering = center_kind::median;
    bo.keep_iterations = true;
    bo.n_threads = cfg.n_threads;
    v.curve = bootstrap_ale(*model.fitted, model.fit.get(), r.data, name, bo);

    v.stats = compute_stats(v.curve, y, ref ? &*ref : nullptr);
    if (v.kind == column_kind::numeric)
      v.numeric_regions = regions_numeric(v.curve, r.band, y_range);
    else
      v.categorical_regions = regions_categorical(v.curve, r.band);
    r.variables.push_back(std::move(v));
  }
  return r;
}

void write_outputs(const analysis_result& result, const analysis_config& cfg) {
  if (cfg.output_dir.empty()) throw std::invalid_argument("no output directory given");
  std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  write_file(dir / "ale.json", render_ale_json(result, cfg));
  write_file(dir / "stats.csv", render_stats_csv(result));
  write_file(dir / "regions.csv", render_regions_csv(result));

  if (cfg.plots) {
    std::filesystem::create_directories(dir / "plots");
    for (const variable_analysis& v : result.variables) {
      // Column names become filenames; anything path-hostile is flattened.
      std::string stem = v.name;
      for (char& c : stem)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
          c = '_';
      write_file(dir / "plots" / (stem + ".svg"),
                 render_svg(v.curve, result.band, result.data, v.name));
    }
  }
}

analysis_result run_analysis(const analysis_config& cfg) {
  analysis_result r = analyze(cfg);
  write_outputs(r, cfg);
  return r;
}

}  // namespace alekit
