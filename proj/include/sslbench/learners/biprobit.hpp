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

// Bivariate probit with sample selection (Heckman-type correction for a
// binary outcome).
//
//   outcome    o1 = b'x + u1,   y = 1[o1 > 0]   observed only when s = 1
//   selection  o2 = g'x + u2,   s = 1[o2 > 0]
//   (u1, u2) ~ N(0, 0, 1, 1, rho)
//
//   log L = sum_{s=1} log Phi2(q b'x, g'x, q rho)      q = 2y - 1
//         + sum_{s=0} log Phi(-g'x)
//
// The maximization runs over (b, g, atanh(rho)) so |rho| < 1 always holds.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sslbench/learners/normal.hpp"
#include "sslbench/learners/probit.hpp"

namespace sslbench {

struct BiprobitOptions {
  int max_iter = 500;
  double tol = 1e-6;  // on the max-norm of the mean score vector
};

// Parameters in their natural scale.
struct BiprobitParams {
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
  double rho = 0.0;
};

struct BiprobitData {
  const Eigen::MatrixXd& X;
  std::span<const int> y;  // outcome, read only where s == 1
  std::span<const int> s;  // 1 = labeled
};

inline double biprobit_loglik(const BiprobitData& d, const BiprobitParams& p) {
  const Eigen::VectorXd xb = d.X * p.beta, xg = d.X * p.gamma;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < d.X.rows(); ++i) {
    if (d.s[i] == 1) {
      const double q = d.y[i] == 1 ? 1.0 : -1.0;
      ll += std::log(std::max(normal::bvn_cdf(q * xb[i], xg[i], q * p.rho), 1e-300));
    } else {
      ll += normal::log_cdf(-xg[i]);
    }
  }
  return ll;
}

// Gradient of biprobit_loglik with respect to (beta, gamma, rho), stacked.
inline Eigen::VectorXd biprobit_gradient(const BiprobitData& d, const BiprobitParams& p) {
  const Eigen::Index k = d.X.cols();
  const Eigen::VectorXd xb = d.X * p.beta, xg = d.X * p.gamma;
  Eigen::VectorXd sb = Eigen::VectorXd::Zero(d.X.rows());
  Eigen::VectorXd sg = Eigen::VectorXd::Zero(d.X.rows());
  double drho = 0.0;
  for (Eigen::Index i = 0; i < d.X.rows(); ++i) {
    if (d.s[i] == 1) {
      const double q = d.y[i] == 1 ? 1.0 : -1.0;
      const double a = q * xb[i], b = xg[i], r = q * p.rho;
      const double prob = std::max(normal::bvn_cdf(a, b, r), 1e-300);
      sb[i] = q * normal::bvn_cdf_da(a, b, r) / prob;
      sg[i] = normal::bvn_cdf_da(b, a, r) / prob;
      drho += q * normal::bvn_pdf(a, b, r) / prob;
    } else {
      sg[i] = -normal::inverse_mills(-xg[i]);
    }
  }
  Eigen::VectorXd g(2 * k + 1);
  g.head(k) = d.X.transpose() * sb;
  g.segment(k, k) = d.X.transpose() * sg;
  g[2 * k] = drho;
  return g;
}

class BivariateProbitModel final : public Model {
 public:
  BivariateProbitModel(LinearDesign design, BiprobitParams params, bool converged,
                       double log_likelihood, int iterations)
      : design_(std::move(design)),
        params_(std::move(params)),
        converged_(converged),
        log_likelihood_(log_likelihood),
        iterations_(iterations) {}

  int n_classes() const override { return 2; }
  const Eigen::VectorXd& beta() const { return params_.beta; }
  const Eigen::VectorXd& gamma() const { return params_.gamma; }
  double rho() const { return params_.rho; }
  const BiprobitParams& params() const { return params_; }
  bool converged() const { return converged_; }
  double log_likelihood() const { return log_likelihood_; }
  int iterations() const { return iterations_; }

  // Population-level P(y = 1 | x) = Phi(b'x), not conditioned on selection.
  double prob1(std::span<const double> row) const {
    return normal::cdf(design_.encode(row).dot(params_.beta));
  }
  // P(s = 1 | x) = Phi(g'x).
  double selection_prob(std::span<const double> row) const {
    return normal::cdf(design_.encode(row).dot(params_.gamma));
  }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    const double p = prob1(row);
    return {1.0 - p, p};
  }

  nlohmann::json to_json() const override {
    auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    return {{"format_version", kModelFormatVersion},
            {"type", "bivariate_probit"},
            {"beta", vec(params_.beta)},
            {"gamma", vec(params_.gamma)},
            {"rho", params_.rho},
            {"converged", converged_},
            {"log_likelihood", log_likelihood_}};
  }

 private:
  LinearDesign design_;
  BiprobitParams params_;
  bool converged_;
  double log_likelihood_;
  int iterations_;
};

struct BiprobitFit {
  BiprobitParams params;
  BiprobitParams start;  // independent-probit initialization
  double log_likelihood = 0.0;
  double start_log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline Eigen::VectorXd pack(const BiprobitParams& p) {
  const Eigen::Index k = p.beta.size();
  Eigen::VectorXd theta(2 * k + 1);
  theta << p.beta, p.gamma, std::atanh(p.rho);
  return theta;
}

inline BiprobitParams unpack(const Eigen::VectorXd& theta) {
  const Eigen::Index k = (theta.size() - 1) / 2;
  return {theta.head(k), theta.segment(k, k), std::tanh(theta[2 * k])};
}

}  // namespace detail

// BFGS ascent on the mean log-likelihood, started from two independent
// probits (outcome on the labeled rows, selection on all rows) and rho = 0.
inline BiprobitFit biprobit_fit(const Eigen::MatrixXd& X, std::span<const int> y,
                                std::span<const int> s, const BiprobitOptions& opt = {}) {
  const auto n = X.rows();
  if (static_cast<Eigen::Index>(s.size()) != n || static_cast<Eigen::Index>(y.size()) != n)
    throw Error("biprobit: length mismatch");
  std::vector<Eigen::Index> lab;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s[i] != 0 && s[i] != 1) throw Error("biprobit: selection indicator must be 0/1");
    if (s[i] == 1) lab.push_back(i);
  }
  if (static_cast<Eigen::Index>(lab.size()) == n)
    throw Error("biprobit: every row is labeled; the selection equation is unidentified");
  if (lab.empty()) throw Error("biprobit: no labeled rows");

  Eigen::MatrixXd XL(static_cast<Eigen::Index>(lab.size()), X.cols());
  std::vector<int> yl;
  for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(lab.size()); ++r) {
    XL.row(r) = X.row(lab[r]);
    yl.push_back(y[lab[r]]);
  }
  BiprobitFit fit;
  fit.start.beta = probit_fit(XL, yl).coef;
  fit.start.gamma = probit_fit(X, s).coef;
  fit.start.rho = 0.0;

  const BiprobitData data{X, y, s};
  const double scale = 1.0 / static_cast<double>(n);
  auto value = [&](const Eigen::VectorXd& th) { return scale * biprobit_loglik(data, detail::unpack(th)); };
  auto grad = [&](const Eigen::VectorXd& th) {
    const auto p = detail::unpack(th);
    Eigen::VectorXd g = scale * biprobit_gradient(data, p);
    g[g.size() - 1] *= 1.0 - p.rho * p.rho;  // d rho / d atanh(rho)
    return g;
  };

  Eigen::VectorXd theta = detail::pack(fit.start);
  double f = value(theta);
  fit.start_log_likelihood = f / scale;
  Eigen::VectorXd g = grad(theta);
  const Eigen::Index m = theta.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(m, m);  // inverse Hessian of -f
  bool scaled = false;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (g.cwiseAbs().maxCoeff() < opt.tol) {
      fit.converged = true;
      break;
    }
    Eigen::VectorXd dir = H * g;
    if (dir.dot(g) <= 0.0) {
      H.setIdentity();
      dir = g;
    }
    // Backtracking with the Armijo condition; atanh(rho) steps are capped.
    double t = 1.0;
    const double max_rho_step = 2.0;
    if (std::fabs(dir[m - 1]) > max_rho_step) t = max_rho_step / std::fabs(dir[m - 1]);
    Eigen::VectorXd next;
    double f_next = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      next = theta + t * dir;
      f_next = value(next);
      if (std::isfinite(f_next) && f_next >= f + 1e-4 * t * dir.dot(g)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd g_next = grad(next);
    const Eigen::VectorXd sk = next - theta;
    const Eigen::VectorXd yk = g - g_next;  // gradient change of -f
    theta = next;
    f = f_next;
    g = g_next;
    const double sy = sk.dot(yk);
    if (sy > 1e-12 * sk.norm() * yk.norm()) {
      if (!scaled) {
        H *= sy / yk.dot(yk);
        scaled = true;
      }
      const double rho_k = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
      H = (I - rho_k * sk * yk.transpose()) * H * (I - rho_k * yk * sk.transpose()) +
          rho_k * sk * sk.transpose();
    }
  }
  fit.iterations = it;
  fit.params = detail::unpack(theta);
  fit.log_likelihood = f / scale;
  return fit;
}

inline BivariateProbitModel biprobit_model(const Dataset& data, const LabeledSplit& split,
                                           const BiprobitOptions& opt = {}) {
  split.check(data);
  if (data.n_classes() != 2) throw Error("biprobit: binary outcome only");
  LinearDesign design(data.meta());
  const auto all = iota_index(data.n_rows());
  const Eigen::MatrixXd X = design.matrix(data, all);
  std::vector<int> y(data.n_rows(), 0), s(data.n_rows(), 0);
  for (Index i : split.labeled) {
    s[i] = 1;
    y[i] = data.label(i);
  }
  auto fit = biprobit_fit(X, y, s, opt);
  return BivariateProbitModel(std::move(design), std::move(fit.params), fit.converged,
                              fit.log_likelihood, fit.iterations);
}

inline double biprobit_predict_proba(const BivariateProbitModel& model, std::span<const double> row) {
  return model.prob1(row);
}

}  // namespace sslbench
