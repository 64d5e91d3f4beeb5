#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "alekit/dataset.hpp"

namespace alekit {

// Whether a predictor may be called from several threads at once. External
// process models are serial_only; everything trained in-process is pure and
// parallel_safe.
enum class concurrency_class { parallel_safe, serial_only };

// A fitted model. predict() returns one value per row of d's predictor
// columns, resolves columns by name (extra columns in d are ignored), and
// never mutates its input. Batch composition must hold: predicting the
// concatenation of A and B equals predicting A then B.
class predictor {
 public:
  virtual ~predictor() = default;
  virtual std::vector<double> predict(const dataset& d) const = 0;
  virtual concurrency_class concurrency() const { return concurrency_class::parallel_safe; }
};

// A model-fitting recipe, reusable across resamples and augmented datasets.
class trainer {
 public:
  virtual ~trainer() = default;
  virtual std::shared_ptr<const predictor> fit(const dataset& d) const = 0;
  virtual std::string description() const = 0;
};

// Ordinary least squares on an intercept plus all predictor columns, with
// categorical and logical columns one-hot encoded (first level dropped). If
// the design is rank deficient the fit falls back to ridge-regularized normal
// equations with `ridge_epsilon` added to the diagonal.
std::shared_ptr<const predictor> fit_ols(const dataset& d, double ridge_epsilon = 1e-8);

// CART-style regression tree grown by variance reduction on the same encoding
// as fit_ols. Splits must leave at least min_leaf rows on each side; ties are
// broken toward the lowest feature index, then the lowest threshold, so the
// fit is deterministic. max_depth == 0 yields the training-mean stump.
std::shared_ptr<const predictor> fit_tree(const dataset& d, int max_depth,
                                          std::size_t min_leaf = 1);

// Wraps a shell command as a predictor: rows are sent to it as CSV on stdin
// and it must answer with exactly one decimal number per row on stdout. Each
// predict() call runs one process; the wrapper is serial_only.
std::shared_ptr<const predictor> exec_predictor(const std::string& command);

std::shared_ptr<const trainer> ols_trainer(double ridge_epsilon = 1e-8);
std::shared_ptr<const trainer> tree_trainer(int max_depth, std::size_t min_leaf = 1);

}  // namespace alekit
