#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "alekit/model.hpp"
#include "encode.hpp"

namespace alekit {

namespace {

struct tree_node {
  // Leaves keep feature == -1 and predict `value`; internal nodes route rows
  // with feature value <= threshold to `left`.
  int feature = -1;
  double threshold = 0.0;
  double value = 0.0;
  int left = -1;
  int right = -1;
};

struct split_candidate {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

class tree_builder {
 public:
  tree_builder(const std::vector<std::vector<double>>& feats, const std::vector<double>& y,
               int max_depth, std::size_t min_leaf)
      : feats_(feats), y_(y), max_depth_(max_depth), min_leaf_(min_leaf) {}

  std::vector<tree_node> build() {
    std::vector<std::size_t> rows(y_.size());
    std::iota(rows.begin(), rows.end(), 0);
    grow(std::move(rows), 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<std::size_t> rows, int depth) {
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double sum = 0.0;
    for (std::size_t r : rows) sum += y_[r];
    nodes_[id].value = sum / static_cast<double>(rows.size());

    if (depth >= max_depth_ || rows.size() < 2 * min_leaf_) return id;
    split_candidate best = best_split(rows);
    if (!best.valid) return id;

    std::vector<std::size_t> left, right;
    left.reserve(rows.size());
    right.reserve(rows.size());
    for (std::size_t r : rows) {
      if (feats_[static_cast<std::size_t>(best.feature)][r] <= best.threshold)
        left.push_back(r);
      else
        right.push_back(r);
    }
    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    int l = grow(std::move(left), depth + 1);
    int r = grow(std::move(right), depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  // Exhaustive scan for the split maximizing the variance reduction
  // sum_L^2/n_L + sum_R^2/n_R (the parent term is constant within a node).
  // Features are visited in ascending index and thresholds in ascending value
  // with a strict improvement test, which pins tie-breaking to the lowest
  // feature index, then the lowest threshold.
  split_candidate best_split(const std::vector<std::size_t>& rows) const {
    split_candidate best;
    std::size_t n = rows.size();
    std::vector<std::pair<double, double>> vy(n);
    for (int f = 0; f < static_cast<int>(feats_.size()); ++f) {
      const std::vector<double>& col = feats_[static_cast<std::size_t>(f)];
      for (std::size_t i = 0; i < n; ++i) vy[i] = {col[rows[i]], y_[rows[i]]};
      // Lexicographic order (value, then y) so accumulation order, and with it
      // every tie decision, is independent of the sort implementation.
      std::sort(vy.begin(), vy.end());

      double left_sum = 0.0;
      double total = 0.0;
      for (const auto& p : vy) total += p.second;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += vy[i].second;
        if (vy[i].first == vy[i + 1].first) continue;
        std::size_t n_left = i + 1;
        std::size_t n_right = n - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) continue;
        double right_sum = total - left_sum;
        double score = left_sum * left_sum / static_cast<double>(n_left) +
                       right_sum * right_sum / static_cast<double>(n_right);
        if (!best.valid || score > best.score) {
          best.valid = true;
          best.feature = f;
          best.threshold = vy[i].first + 0.5 * (vy[i + 1].first - vy[i].first);
          best.score = score;
        }
      }
    }
    return best;
  }

  const std::vector<std::vector<double>>& feats_;
  const std::vector<double>& y_;
  int max_depth_;
  std::size_t min_leaf_;
  std::vector<tree_node> nodes_;
};

class tree_predictor final : public predictor {
 public:
  tree_predictor(feature_schema schema, std::vector<tree_node> nodes)
      : schema_(std::move(schema)), nodes_(std::move(nodes)) {}

  std::vector<double> predict(const dataset& d) const override {
    auto feats = schema_.encode(d);
    std::vector<double> out(d.n_rows);
    for (std::size_t r = 0; r < d.n_rows; ++r) {
      const tree_node* node = &nodes_[0];
      while (node->feature >= 0) {
        double v = feats[static_cast<std::size_t>(node->feature)][r];
        node = &nodes_[static_cast<std::size_t>(v <= node->threshold ? node->left
                                                                     : node->right)];
      }
      out[r] = node->value;
    }
    return out;
  }

 private:
  feature_schema schema_;
  std::vector<tree_node> nodes_;
};

}  // namespace

std::shared_ptr<const predictor> fit_tree(const dataset& d, int max_depth,
                                          std::size_t min_leaf) {
  if (d.n_rows == 0) throw std::invalid_argument("cannot fit on an empty dataset");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (min_leaf == 0) throw std::invalid_argument("min_leaf must be >= 1");
  feature_schema schema = feature_schema::capture(d);
  auto feats = schema.encode(d);
  tree_builder builder(feats, d.y(), max_depth, min_leaf);
  return std::make_shared<tree_predictor>(std::move(schema), builder.build());
}

namespace {

class tree_trainer_impl final : public trainer {
 public:
  tree_trainer_impl(int max_depth, std::size_t min_leaf)
      : max_depth_(max_depth), min_leaf_(min_leaf) {}
  std::shared_ptr<const predictor> fit(const dataset& d) const override {
    return fit_tree(d, max_depth_, min_leaf_);
  }
  std::string description() const override {
    std::ostringstream s;
    s << "tree(max_depth=" << max_depth_ << ", min_leaf=" << min_leaf_ << ")";
    return s.str();
  }

 private:
  int max_depth_;
  std::size_t min_leaf_;
};

}  // namespace

std::shared_ptr<const trainer> tree_trainer(int max_depth, std::size_t min_leaf) {
  return std::make_shared<tree_trainer_impl>(max_depth, min_leaf);
}

}  // namespace alekit
