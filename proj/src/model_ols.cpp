#include <Eigen/Dense>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "alekit/model.hpp"
#include "encode.hpp"

namespace alekit {

namespace {

class ols_predictor final : public predictor {
 public:
  ols_predictor(feature_schema schema, Eigen::VectorXd beta)
      : schema_(std::move(schema)), beta_(std::move(beta)) {}

  std::vector<double> predict(const dataset& d) const override {
    auto feats = schema_.encode(d);
    std::vector<double> out(d.n_rows, beta_[0]);
    for (std::size_t f = 0; f < feats.size(); ++f) {
      double b = beta_[static_cast<Eigen::Index>(f) + 1];
      for (std::size_t r = 0; r < d.n_rows; ++r) out[r] += b * feats[f][r];
    }
    return out;
  }

 private:
  feature_schema schema_;
  Eigen::VectorXd beta_;
};

}  // namespace

std::shared_ptr<const predictor> fit_ols(const dataset& d, double ridge_epsilon) {
  if (d.n_rows == 0) throw std::invalid_argument("cannot fit on an empty dataset");
  feature_schema schema = feature_schema::capture(d);
  auto feats = schema.encode(d);

  Eigen::Index n = static_cast<Eigen::Index>(d.n_rows);
  Eigen::Index k = static_cast<Eigen::Index>(feats.size()) + 1;
  Eigen::MatrixXd x(n, k);
  x.col(0).setOnes();
  for (Eigen::Index f = 1; f < k; ++f)
    for (Eigen::Index r = 0; r < n; ++r)
      x(r, f) = feats[static_cast<std::size_t>(f - 1)][static_cast<std::size_t>(r)];
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(d.y().data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::VectorXd beta;
  if (n > k - 1 && qr.rank() == k) {
    beta = qr.solve(y);
  } else {
    // Rank-deficient designs (duplicated columns, constant dummies, n <= p)
    // get a ridge nudge on the normal equations; predictions stay within
    // O(ridge_epsilon) of any exact least-squares solution.
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += ridge_epsilon;
    beta = Eigen::LLT<Eigen::MatrixXd>(gram).solve(x.transpose() * y);
  }
  if (!beta.allFinite()) throw std::runtime_error("least-squares solve produced non-finite coefficients");
  return std::make_shared<ols_predictor>(std::move(schema), std::move(beta));
}

namespace {

class ols_trainer_impl final : public trainer {
 public:
  explicit ols_trainer_impl(double ridge_epsilon) : ridge_epsilon_(ridge_epsilon) {}
  std::shared_ptr<const predictor> fit(const dataset& d) const override {
    return fit_ols(d, ridge_epsilon_);
  }
  std::string description() const override { return "ols"; }

 private:
  double ridge_epsilon_;
};

}  // namespace

std::shared_ptr<const trainer> ols_trainer(double ridge_epsilon) {
  return std::make_shared<ols_trainer_impl>(ridge_epsilon);
}

}  // namespace alekit
