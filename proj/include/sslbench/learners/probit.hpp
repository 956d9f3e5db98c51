/*
 * Copyright 2026 The sslbench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sslbench/learners/classifier.hpp"
#include "sslbench/learners/normal.hpp"

namespace sslbench {

// Maps a feature row to the regressor vector of a linear index model:
// continuous columns as-is, nominal columns one-hot without category 0,
// and a trailing intercept.
class LinearDesign {
 public:
  LinearDesign() = default;
  explicit LinearDesign(std::vector<FeatureKind> meta) : meta_(std::move(meta)) {
    width_ = 1;
    for (const auto& k : meta_) width_ += k.is_continuous() ? 1 : k.arity - 1;
  }

  Index width() const { return width_; }
  const std::vector<FeatureKind>& meta() const { return meta_; }

  Eigen::VectorXd encode(std::span<const double> row) const {
    if (row.size() != meta_.size()) throw Error("linear design: row width mismatch");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(width_));
    Eigen::Index pos = 0;
    for (Index j = 0; j < meta_.size(); ++j) {
      if (meta_[j].is_continuous()) {
        x[pos++] = row[j];
      } else {
        const auto c = static_cast<int>(row[j]);
        if (c > 0) x[pos + c - 1] = 1.0;
        pos += meta_[j].arity - 1;
      }
    }
    x[pos] = 1.0;
    return x;
  }

  Eigen::MatrixXd matrix(const Dataset& data, std::span<const Index> rows) const {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width_));
    for (Index r = 0; r < rows.size(); ++r)
      X.row(static_cast<Eigen::Index>(r)) = encode(data.row(rows[r])).transpose();
    return X;
  }

 private:
  std::vector<FeatureKind> meta_;
  Index width_ = 1;
};

struct ProbitOptions {
  int max_iter = 100;
  double tol = 1e-8;           // on the max-norm of the mean score vector
  double separation_norm = 1e4;
};

struct ProbitFit {
  Eigen::VectorXd coef;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline void check_binary(std::span<const int> y) {
  for (int v : y)
    if (v != 0 && v != 1) throw Error("probit: outcome must be 0/1");
}

inline void check_full_rank(const Eigen::MatrixXd& X) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols()) throw Error("probit: design matrix is rank deficient");
}

}  // namespace detail

// Weighted probit log-likelihood sum_i w_i log Phi(q_i x_i'b), q = 2y - 1.
inline double probit_loglik(const Eigen::MatrixXd& X, std::span<const int> y,
                            std::span<const double> w, const Eigen::VectorXd& coef) {
  const Eigen::VectorXd eta = X * coef;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double q = y[i] == 1 ? 1.0 : -1.0;
    ll += (w.empty() ? 1.0 : w[i]) * normal::log_cdf(q * eta[i]);
  }
  return ll;
}

inline Eigen::VectorXd probit_gradient(const Eigen::MatrixXd& X, std::span<const int> y,
                                       std::span<const double> w, const Eigen::VectorXd& coef) {
  const Eigen::VectorXd eta = X * coef;
  Eigen::VectorXd score(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double q = y[i] == 1 ? 1.0 : -1.0;
    score[i] = (w.empty() ? 1.0 : w[i]) * q * normal::inverse_mills(q * eta[i]);
  }
  return X.transpose() * score;
}

// Maximum likelihood probit by Newton-Raphson with step halving.
inline ProbitFit probit_fit(const Eigen::MatrixXd& X, std::span<const int> y,
                            const ProbitOptions& opt = {}, std::span<const double> w = {}) {
  if (static_cast<Eigen::Index>(y.size()) != X.rows()) throw Error("probit: length mismatch");
  if (!w.empty() && w.size() != y.size()) throw Error("probit: weight length mismatch");
  if (X.rows() == 0) throw Error("probit: no rows");
  detail::check_binary(y);
  const bool has0 = std::find(y.begin(), y.end(), 0) != y.end();
  const bool has1 = std::find(y.begin(), y.end(), 1) != y.end();
  if (!has0 || !has1) throw SeparationError("probit: outcome is constant (perfect separation)");
  detail::check_full_rank(X);

  double wsum = 0.0;
  for (Index i = 0; i < y.size(); ++i) wsum += w.empty() ? 1.0 : w[i];

  ProbitFit fit;
  fit.coef = Eigen::VectorXd::Zero(X.cols());
  double ll = probit_loglik(X, y, w, fit.coef);
  for (int it = 0; it < opt.max_iter; ++it) {
    const Eigen::VectorXd eta = X * fit.coef;
    Eigen::VectorXd score(X.rows()), curv(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double q = y[i] == 1 ? 1.0 : -1.0;
      const double wi = w.empty() ? 1.0 : w[i];
      const double lam = normal::inverse_mills(q * eta[i]);
      score[i] = wi * q * lam;
      curv[i] = wi * lam * (lam + q * eta[i]);
    }
    const Eigen::VectorXd grad = X.transpose() * score;
    fit.iterations = it;
    if (grad.cwiseAbs().maxCoeff() / wsum < opt.tol) {
      fit.converged = true;
      break;
    }
    const Eigen::MatrixXd info = X.transpose() * curv.asDiagonal() * X;
    const Eigen::VectorXd step = info.ldlt().solve(grad);
    double t = 1.0;
    Eigen::VectorXd next = fit.coef + step;
    double ll_next = probit_loglik(X, y, w, next);
    while (!(ll_next >= ll) && t > 1e-10) {
      t *= 0.5;
      next = fit.coef + t * step;
      ll_next = probit_loglik(X, y, w, next);
    }
    if (!(ll_next >= ll)) break;
    fit.coef = next;
    ll = ll_next;
    if (fit.coef.norm() > opt.separation_norm)
      throw SeparationError("probit: coefficient norm diverging (separation)");
  }
  fit.log_likelihood = ll;

  // A finite MLE cannot classify every row correctly: scaling such a
  // coefficient vector up would raise every likelihood term.
  const Eigen::VectorXd eta = X * fit.coef;
  bool perfect = true;
  for (Eigen::Index i = 0; i < X.rows() && perfect; ++i)
    perfect = (y[i] == 1 ? eta[i] : -eta[i]) > 0.0;
  if (perfect) throw SeparationError("probit: classes are perfectly separated");
  return fit;
}

class ProbitModel final : public Model {
 public:
  ProbitModel(LinearDesign design, Eigen::VectorXd coef, bool converged = true)
      : design_(std::move(design)), coef_(std::move(coef)), converged_(converged) {}

  int n_classes() const override { return 2; }
  const Eigen::VectorXd& coef() const { return coef_; }
  bool converged() const { return converged_; }

  double index(std::span<const double> row) const { return design_.encode(row).dot(coef_); }
  double prob1(std::span<const double> row) const { return normal::cdf(index(row)); }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    const double p = prob1(row);
    return {1.0 - p, p};
  }

  nlohmann::json to_json() const override {
    return {{"format_version", kModelFormatVersion},
            {"type", "probit"},
            {"coefficients", std::vector<double>(coef_.data(), coef_.data() + coef_.size())},
            {"converged", converged_}};
  }

 private:
  LinearDesign design_;
  Eigen::VectorXd coef_;
  bool converged_;
};

inline double probit_predict_proba(const ProbitModel& model, std::span<const double> row) {
  return model.prob1(row);
}

// Probit on the labeled rows of a dataset, via the LinearDesign encoding.
class ProbitLearner final : public Learner {
 public:
  explicit ProbitLearner(ProbitOptions opt = {}) : opt_(opt) {}
  std::string name() const override { return "probit"; }
  ModelPtr fit(const FitInput& in) const override {
    in.check();
    if (in.n_classes != 2) throw Error("probit: binary targets only");
    LinearDesign design(in.data.meta());
    const auto X = design.matrix(in.data, in.rows);
    auto f = probit_fit(X, in.targets, opt_, in.weights);
    return std::make_shared<ProbitModel>(std::move(design), std::move(f.coef), f.converged);
  }

 private:
  ProbitOptions opt_;
};

}  // namespace sslbench
