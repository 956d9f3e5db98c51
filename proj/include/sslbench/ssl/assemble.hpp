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

// ASSEMBLE.AdaBoost: AdaBoost over labeled rows and pseudo-labeled
// unlabeled rows.
//
//   D_0      beta / l on labeled rows, (1 - beta) / u on unlabeled rows
//   per t    fit f on a D_t-weighted sample of size l
//            eps_t = sum c_i D_t(i) [miss_i] / sum c_i D_t(i),
//                    c_i = alpha (labeled) or 1 - alpha (unlabeled)
//            w_t = 0.5 ln((1 - eps_t) / eps_t)
//            D_{t+1}(i) ~ D_t(i) exp(-w_t f_t(x_i)),  f_t = +1 / -1
//            pseudo-labels <- current ensemble prediction

#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "sslbench/learners/classifier.hpp"
#include "sslbench/learners/nearest_neighbor.hpp"

namespace sslbench {

enum class AssembleInit { kNearestNeighbor, kMajorityClass };

struct AssembleConfig {
  double alpha = 1.0;
  AssembleInit init = AssembleInit::kNearestNeighbor;
  int T = 50;
  double beta = 0.9;
  LearnerPtr base;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("assemble: alpha must lie in (0, 1]");
    if (!(beta > 0.0 && beta < 1.0)) throw Error("assemble: beta must lie in (0, 1)");
    if (T < 1) throw Error("assemble: T must be at least 1");
    if (!base) throw Error("assemble: base learner is required");
  }
};

// Weighted average of member posteriors.
class EnsembleModel final : public Model {
 public:
  EnsembleModel(int n_classes, std::vector<ModelPtr> members, std::vector<double> weights)
      : n_classes_(n_classes), members_(std::move(members)), weights_(std::move(weights)) {}

  int n_classes() const override { return n_classes_; }
  const std::vector<ModelPtr>& members() const { return members_; }
  const std::vector<double>& weights() const { return weights_; }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    std::vector<double> p(n_classes_, 0.0);
    double total = 0.0;
    for (Index t = 0; t < members_.size(); ++t) {
      const auto q = members_[t]->predict_proba(row);
      for (int c = 0; c < n_classes_; ++c) p[c] += weights_[t] * q[c];
      total += weights_[t];
    }
    for (double& x : p) x /= total;
    return p;
  }

  nlohmann::json to_json() const override {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& x : members_) m.push_back(x->to_json());
    return {{"format_version", kModelFormatVersion},
            {"type", "ensemble"},
            {"weights", weights_},
            {"members", m}};
  }

 private:
  int n_classes_;
  std::vector<ModelPtr> members_;
  std::vector<double> weights_;
};

// Most frequent label among `rows`; ties go to the lower class index.
inline int majority_class(const Dataset& data, std::span<const Index> rows) {
  std::vector<Index> counts(data.n_classes(), 0);
  for (Index i : rows) ++counts[data.label(i)];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct AssembleResult {
  std::shared_ptr<EnsembleModel> model;
  std::vector<int> initial_pseudo;     // parallel to split.unlabeled
  std::vector<int> final_pseudo;
  std::vector<double> errors;          // eps_t of every fitted round
  std::vector<std::vector<double>> distributions;  // D_0, D_1, ... over labeled then unlabeled rows
};

inline constexpr double kAssembleMaxStep = 0.5 * 13.815510557964274;  // 0.5 ln(1e6)

// `nn_data`, when given, supplies the features for the 1-NN initialization
// (same rows and labels as `data`, e.g. before discretization).
inline AssembleResult assemble_fit(const Dataset& data, const LabeledSplit& split, const AssembleConfig& cfg,
                                   const Dataset* nn_data = nullptr) {
  cfg.validate();
  split.check(data);
  const Index l = split.labeled.size(), u = split.unlabeled.size();
  if (l == 0) throw Error("assemble: no labeled rows");
  const int K = data.n_classes();

  AssembleResult res;
  res.initial_pseudo = cfg.init == AssembleInit::kNearestNeighbor && u > 0
                           ? nn1_assign(nn_data ? *nn_data : data, split.labeled, split.unlabeled)
                           : std::vector<int>(u, majority_class(data, split.labeled));

  // Rows: labeled first, then unlabeled.
  std::vector<Index> rows(split.labeled);
  rows.insert(rows.end(), split.unlabeled.begin(), split.unlabeled.end());
  std::vector<int> target(l + u);
  for (Index r = 0; r < l; ++r) target[r] = data.label(split.labeled[r]);
  for (Index r = 0; r < u; ++r) target[l + r] = res.initial_pseudo[r];
  std::vector<double> cost(l + u);
  for (Index r = 0; r < l + u; ++r) cost[r] = r < l ? cfg.alpha : 1.0 - cfg.alpha;

  std::vector<double> D(l + u);
  for (Index r = 0; r < l + u; ++r)
    D[r] = u == 0 ? 1.0 / static_cast<double>(l)
                  : (r < l ? cfg.beta / static_cast<double>(l) : (1.0 - cfg.beta) / static_cast<double>(u));
  res.distributions.push_back(D);

  Rng rng(seeds::derive(cfg.seed, "assemble"));
  std::vector<ModelPtr> members;
  std::vector<double> weights;
  std::vector<double> ensemble((l + u) * K, 0.0);  // running sum of w_t * posterior

  for (int t = 0; t < cfg.T; ++t) {
    const auto picks = weighted_sample(rng, D, l);
    TrainingSet sample;
    for (Index p : picks) sample.add(rows[p], target[p]);
    ModelPtr model = cfg.base->fit(sample.view(data, K));

    std::vector<char> miss(l + u);
    std::vector<double> proba((l + u) * K);
    double num = 0.0, den = 0.0;
    for (Index r = 0; r < l + u; ++r) {
      const auto p = model->predict_proba(data.row(rows[r]));
      std::copy(p.begin(), p.end(), proba.begin() + static_cast<std::ptrdiff_t>(r * K));
      const int pred = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
      miss[r] = pred != target[r];
      num += cost[r] * D[r] * miss[r];
      den += cost[r] * D[r];
    }
    const double eps = den > 0.0 ? num / den : 0.0;
    if (eps >= 0.5) {
      if (members.empty()) {
        members.push_back(model);
        weights.push_back(1.0);
        res.errors.push_back(eps);
      }
      break;
    }
    res.errors.push_back(eps);
    const double w = eps <= 0.0 ? kAssembleMaxStep : std::min(kAssembleMaxStep, 0.5 * std::log((1.0 - eps) / eps));
    members.push_back(model);
    weights.push_back(w);
    for (Index r = 0; r < (l + u) * K; ++r) ensemble[r] += w * proba[r];

    double total = 0.0;
    for (Index r = 0; r < l + u; ++r) {
      D[r] *= std::exp(miss[r] ? w : -w);
      total += D[r];
    }
    for (double& x : D) x /= total;
    res.distributions.push_back(D);

    // Pseudo-labels follow the ensemble's weighted-average posterior.
    for (Index r = l; r < l + u; ++r) {
      const auto first = ensemble.begin() + static_cast<std::ptrdiff_t>(r * K);
      target[r] = static_cast<int>(std::max_element(first, first + K) - first);
    }
  }
  res.final_pseudo.assign(target.begin() + static_cast<std::ptrdiff_t>(l), target.end());
  res.model = std::make_shared<EnsembleModel>(K, std::move(members), std::move(weights));
  return res;
}

}  // namespace sslbench
