#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "alekit/dataset.hpp"

namespace alekit {

// Shared design-matrix encoding for the in-process trainers: numeric columns
// pass through, categorical and logical columns expand to one indicator per
// level with the first level dropped. The schema is captured at fit time and
// re-applied by name at predict time, so datasets with extra or reordered
// columns encode consistently.
struct feature_schema {
  struct source {
    std::string name;
    column_kind kind;
    std::vector<std::string> levels;
  };
  std::vector<source> sources;
  std::size_t n_features = 0;

  static feature_schema capture(const dataset& d) {
    feature_schema s;
    for (std::size_t i : d.predictor_indices()) {
      const column& c = d.columns[i];
      s.sources.push_back({c.name, c.kind, c.levels});
      s.n_features += c.kind == column_kind::numeric
                          ? 1
                          : (c.levels.empty() ? 0 : c.levels.size() - 1);
    }
    return s;
  }

  // Encoded features, one contiguous vector per feature. Unknown columns or
  // level strings absent from the fit-time schema are errors.
  std::vector<std::vector<double>> encode(const dataset& d) const {
    std::vector<std::vector<double>> feats;
    feats.reserve(n_features);
    for (const source& src : sources) {
      const column& c = d.require(src.name);
      if (c.kind != src.kind)
        throw std::invalid_argument("column '" + src.name + "' changed kind since fitting");
      if (src.kind == column_kind::numeric) {
        feats.push_back(c.values);
        continue;
      }
      // Map this dataset's codes onto the fit-time level order by string.
      std::vector<std::size_t> remap(c.levels.size());
      for (std::size_t l = 0; l < c.levels.size(); ++l) {
        bool found = false;
        for (std::size_t t = 0; t < src.levels.size(); ++t) {
          if (src.levels[t] == c.levels[l]) {
            remap[l] = t;
            found = true;
            break;
          }
        }
        if (!found)
          throw std::invalid_argument("column '" + src.name + "' has unknown level '" +
                                      c.levels[l] + "'");
      }
      for (std::size_t t = 1; t < src.levels.size(); ++t) {
        std::vector<double> dummy(d.n_rows, 0.0);
        for (std::size_t r = 0; r < d.n_rows; ++r)
          if (remap[static_cast<std::size_t>(c.codes[r])] == t) dummy[r] = 1.0;
        feats.push_back(std::move(dummy));
      }
    }
    return feats;
  }
};

}  // namespace alekit
