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

// Common-component mixture fitted by EM on labeled and unlabeled rows.
//
//   p(x)       = sum_j pi_j p(x | j)
//   p(y | x)   = sum_j p(j | x) beta_{y|j}
//   L(Theta)   = sum_{L} log sum_j pi_j beta_{y_i|j} p(x_i | j)
//              + sum_{U} log sum_j pi_j p(x_i | j)
//
// p(x | j) is a product of diagonal Gaussians over continuous columns and
// categorical tables over nominal columns. Tables are add-one smoothed,
// which is MAP under a Dirichlet(2) prior; EM then ascends
// L(Theta) + sum log(table entries), and that objective is what the fit
// trace records. Without nominal columns the two coincide.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

inline constexpr double kCCVarianceFloor = 1e-6;

class CCMixtureModel final : public Model {
 public:
  struct Component {
    std::vector<double> mean;                  // per continuous column
    std::vector<double> var;
    std::vector<std::vector<double>> table;    // per nominal column, per category
    std::vector<double> beta;                  // p(y = k | j)
  };

  CCMixtureModel() = default;
  CCMixtureModel(std::vector<FeatureKind> meta, int n_classes, std::vector<double> pi,
                 std::vector<Component> components)
      : meta_(std::move(meta)), n_classes_(n_classes), pi_(std::move(pi)), comp_(std::move(components)) {
    for (Index c = 0; c < meta_.size(); ++c) (meta_[c].is_continuous() ? cont_ : nom_).push_back(c);
  }

  int n_classes() const override { return n_classes_; }
  int n_components() const { return static_cast<int>(comp_.size()); }
  const std::vector<double>& pi() const { return pi_; }
  const std::vector<Component>& components() const { return comp_; }
  const std::vector<FeatureKind>& meta() const { return meta_; }
  const std::vector<Index>& continuous_columns() const { return cont_; }
  const std::vector<Index>& nominal_columns() const { return nom_; }
  double log_likelihood() const { return log_likelihood_; }
  void set_log_likelihood(double v) { log_likelihood_ = v; }

  double log_density(int j, std::span<const double> row) const {
    static const double kLog2Pi = std::log(2.0 * std::numbers::pi);
    const auto& c = comp_[j];
    double s = 0.0;
    for (Index f = 0; f < cont_.size(); ++f) {
      const double d = row[cont_[f]] - c.mean[f];
      s -= 0.5 * (kLog2Pi + std::log(c.var[f]) + d * d / c.var[f]);
    }
    for (Index f = 0; f < nom_.size(); ++f) {
      const auto v = static_cast<Index>(row[nom_[f]]);
      if (v >= c.table[f].size()) throw Error("cc mixture: category out of range");
      s += std::log(c.table[f][v]);
    }
    return s;
  }

  // log pi_j + log p(x | j) for every component.
  std::vector<double> log_joint(std::span<const double> row) const {
    if (row.size() != meta_.size()) throw Error("cc mixture: row width mismatch");
    std::vector<double> out(comp_.size());
    for (Index j = 0; j < comp_.size(); ++j) out[j] = std::log(pi_[j]) + log_density(static_cast<int>(j), row);
    return out;
  }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    const auto post = softmax_log(log_joint(row));
    std::vector<double> p(n_classes_, 0.0);
    for (Index j = 0; j < comp_.size(); ++j)
      for (int k = 0; k < n_classes_; ++k) p[k] += post[j] * comp_[j].beta[k];
    return p;
  }

  nlohmann::json to_json() const override {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : comp_)
      comps.push_back({{"mean", c.mean}, {"var", c.var}, {"table", c.table}, {"beta", c.beta}});
    return {{"format_version", kModelFormatVersion},
            {"type", "cc_mixture"},
            {"n_classes", n_classes_},
            {"pi", pi_},
            {"components", comps},
            {"log_likelihood", log_likelihood_}};
  }

 private:
  std::vector<FeatureKind> meta_;
  int n_classes_ = 2;
  std::vector<double> pi_;
  std::vector<Component> comp_;
  std::vector<Index> cont_, nom_;
  double log_likelihood_ = 0.0;
};

// Row-major n x M responsibilities over all rows of the dataset.
struct Responsibilities {
  Index n = 0;
  int M = 0;
  std::vector<double> r;
  double log_likelihood = 0.0;  // L(Theta) of the model that produced them

  double at(Index i, int j) const { return r[i * static_cast<Index>(M) + static_cast<Index>(j)]; }
};

namespace detail {

inline double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace detail

// Labeled rows weight component j by beta_{y_i|j}; everything runs in log
// space so far-away rows never underflow.
inline Responsibilities cc_e_step(const CCMixtureModel& model, const Dataset& data, const LabeledSplit& split) {
  if (data.meta() != model.meta() || data.n_classes() != model.n_classes())
    throw Error("cc_e_step: model does not match dataset");
  const int M = model.n_components();
  Responsibilities out;
  out.n = data.n_rows();
  out.M = M;
  out.r.assign(out.n * static_cast<Index>(M), 0.0);
  const auto mask = split.labeled_mask(data.n_rows());
  for (Index i = 0; i < data.n_rows(); ++i) {
    auto lj = model.log_joint(data.row(i));
    if (mask[i]) {
      const int y = data.label(i);
      for (int j = 0; j < M; ++j) lj[j] += std::log(model.components()[j].beta[y]);
    }
    const double lse = detail::log_sum_exp(lj);
    out.log_likelihood += lse;
    for (int j = 0; j < M; ++j) out.r[i * static_cast<Index>(M) + static_cast<Index>(j)] = std::exp(lj[j] - lse);
  }
  return out;
}

// Log of the smoothing prior on nominal tables, sum over log entries.
inline double cc_log_prior(const CCMixtureModel& model) {
  double s = 0.0;
  for (const auto& c : model.components())
    for (const auto& t : c.table)
      for (double v : t) s += std::log(v);
  return s;
}

// Closed-form M-step. A component that received no responsibility is
// re-seeded on a random row drawn from `seed`.
inline CCMixtureModel cc_m_step(const Responsibilities& resp, const Dataset& data, const LabeledSplit& split,
                                std::uint64_t seed = 0) {
  const Index n = data.n_rows();
  if (resp.n != n) throw Error("cc_m_step: responsibilities do not match dataset");
  const int M = resp.M, K = data.n_classes();
  const auto mask = split.labeled_mask(n);
  std::vector<Index> cont, nom;
  for (Index c = 0; c < data.n_features(); ++c) (data.kind(c).is_continuous() ? cont : nom).push_back(c);

  std::vector<double> pi(M);
  std::vector<CCMixtureModel::Component> comps(M);
  Rng rng(seeds::derive(seed, "cc/reseed"));
  for (int j = 0; j < M; ++j) {
    auto& c = comps[j];
    double total = 0.0, lab_total = 0.0;
    c.beta.assign(K, 0.0);
    c.mean.assign(cont.size(), 0.0);
    c.var.assign(cont.size(), 0.0);
    c.table.resize(nom.size());
    for (Index f = 0; f < nom.size(); ++f) c.table[f].assign(data.kind(nom[f]).arity, 0.0);

    for (Index i = 0; i < n; ++i) {
      const double r = resp.at(i, j);
      total += r;
      if (mask[i]) {
        lab_total += r;
        c.beta[data.label(i)] += r;
      }
      for (Index f = 0; f < cont.size(); ++f) c.mean[f] += r * data.at(i, cont[f]);
      for (Index f = 0; f < nom.size(); ++f) c.table[f][static_cast<Index>(data.at(i, nom[f]))] += r;
    }
    pi[j] = total / static_cast<double>(n);

    if (!(total > 0.0)) {
      std::uniform_int_distribution<Index> pick(0, n - 1);
      const Index i = pick(rng);
      pi[j] = 0.0;
      for (Index f = 0; f < cont.size(); ++f) {
        c.mean[f] = data.at(i, cont[f]);
        c.var[f] = 1.0;
      }
      for (Index f = 0; f < nom.size(); ++f) {
        const double a = static_cast<double>(c.table[f].size());
        for (Index v = 0; v < c.table[f].size(); ++v)
          c.table[f][v] = (1.0 + (static_cast<double>(v) == data.at(i, nom[f]))) / (a + 1.0);
      }
      c.beta.assign(K, 1.0 / K);
      continue;
    }

    for (double& m : c.mean) m /= total;
    for (Index i = 0; i < n; ++i) {
      const double r = resp.at(i, j);
      for (Index f = 0; f < cont.size(); ++f) {
        const double d = data.at(i, cont[f]) - c.mean[f];
        c.var[f] += r * d * d;
      }
    }
    for (double& v : c.var) v = std::max(kCCVarianceFloor, v / total);
    for (auto& t : c.table) {
      const double a = static_cast<double>(t.size());
      for (double& v : t) v = (v + 1.0) / (total + a);
    }
    if (lab_total > 0.0) for (double& b : c.beta) b /= lab_total;
    else c.beta.assign(K, 1.0 / K);
  }

  // A re-seeded component takes a small share so pi stays a distribution
  // with positive entries.
  const double empty = static_cast<double>(std::count(pi.begin(), pi.end(), 0.0));
  if (empty > 0.0) {
    for (double& p : pi) p = p == 0.0 ? 1.0 / static_cast<double>(n) : p;
    normalize_in_place(pi);
  }
  return CCMixtureModel(data.meta(), K, std::move(pi), std::move(comps));
}

struct CCFitOptions {
  int M = 6;
  int max_iter = 200;
  double tol = 1e-6;  // relative improvement of the objective
  std::uint64_t seed = 0;
};

struct CCFitResult {
  CCMixtureModel model;
  std::vector<double> trace;  // objective after each E-step, starting at the initial model
  int iterations = 0;
  bool converged = false;
};

// Initial model: M distinct random rows as means (or one-hot-leaning
// tables), global per-feature variances, uniform pi, labeled class
// frequencies for every beta.
inline CCMixtureModel cc_initial_model(const Dataset& data, const LabeledSplit& split, int M, std::uint64_t seed) {
  const Index n = data.n_rows();
  if (M < 1) throw Error("cc_fit: M must be at least 1");
  if (n < static_cast<Index>(M)) throw Error("cc_fit: fewer rows than components");
  const int K = data.n_classes();
  std::vector<Index> cont, nom;
  for (Index c = 0; c < data.n_features(); ++c) (data.kind(c).is_continuous() ? cont : nom).push_back(c);

  std::vector<double> gvar(cont.size());
  for (Index f = 0; f < cont.size(); ++f) {
    double s = 0.0, ss = 0.0;
    for (Index i = 0; i < n; ++i) s += data.at(i, cont[f]);
    const double mean = s / static_cast<double>(n);
    for (Index i = 0; i < n; ++i) ss += (data.at(i, cont[f]) - mean) * (data.at(i, cont[f]) - mean);
    gvar[f] = std::max(kCCVarianceFloor, ss / static_cast<double>(n));
  }
  std::vector<double> beta(K, 1.0 / K);
  if (!split.labeled.empty()) {
    beta.assign(K, 0.0);
    for (Index i : split.labeled) beta[data.label(i)] += 1.0;
    normalize_in_place(beta);
  }

  std::vector<Index> perm = iota_index(n);
  Rng rng(seeds::derive(seed, "cc/init"));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<CCMixtureModel::Component> comps(M);
  for (int j = 0; j < M; ++j) {
    const Index i = perm[j];
    auto& c = comps[j];
    for (Index f = 0; f < cont.size(); ++f) c.mean.push_back(data.at(i, cont[f]));
    c.var = gvar;
    for (Index f = 0; f < nom.size(); ++f) {
      const auto a = static_cast<Index>(data.kind(nom[f]).arity);
      std::vector<double> t(a);
      for (Index v = 0; v < a; ++v)
        t[v] = (1.0 + (static_cast<double>(v) == data.at(i, nom[f]))) / (static_cast<double>(a) + 1.0);
      c.table.push_back(std::move(t));
    }
    c.beta = beta;
  }
  return CCMixtureModel(data.meta(), K, std::vector<double>(M, 1.0 / M), std::move(comps));
}

inline CCFitResult cc_fit(const Dataset& data, const LabeledSplit& split, const CCFitOptions& opt = {}) {
  split.check(data);
  CCFitResult res;
  res.model = cc_initial_model(data, split, opt.M, opt.seed);
  Responsibilities r = cc_e_step(res.model, data, split);
  double obj = r.log_likelihood + cc_log_prior(res.model);
  res.model.set_log_likelihood(r.log_likelihood);
  res.trace.push_back(obj);
  for (int it = 0; it < opt.max_iter; ++it) {
    CCMixtureModel next = cc_m_step(r, data, split, seeds::combine(opt.seed, static_cast<std::uint64_t>(it)));
    Responsibilities rn = cc_e_step(next, data, split);
    const double obj_next = rn.log_likelihood + cc_log_prior(next);
    next.set_log_likelihood(rn.log_likelihood);
    res.model = std::move(next);
    r = std::move(rn);
    res.trace.push_back(obj_next);
    res.iterations = it + 1;
    const double gain = obj_next - obj;
    obj = obj_next;
    if (gain <= opt.tol * std::max(1.0, std::fabs(obj))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

inline std::vector<double> cc_predict_proba(const CCMixtureModel& model, std::span<const double> row) {
  return model.predict_proba(row);
}

}  // namespace sslbench
