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
#include <vector>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

// Multinomial naive Bayes over nominal features with add-one smoothing.
//
//   prior[k]           = (W_k + 1) / (W + K)
//   cond[j][k][v]      = (W_kjv + 1) / (W_k + arity_j)
//
// W are sums of the fit weights after rescaling them to mean 1.
class NaiveBayesModel final : public Model {
 public:
  NaiveBayesModel(std::vector<double> priors, std::vector<std::vector<std::vector<double>>> cond)
      : priors_(std::move(priors)), cond_(std::move(cond)) {}

  int n_classes() const override { return static_cast<int>(priors_.size()); }
  const std::vector<double>& priors() const { return priors_; }
  // cond()[feature][class][category]
  const std::vector<std::vector<std::vector<double>>>& cond() const { return cond_; }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    if (row.size() != cond_.size()) throw Error("naive bayes: row width mismatch");
    std::vector<double> logp(priors_.size());
    for (Index k = 0; k < priors_.size(); ++k) logp[k] = std::log(priors_[k]);
    for (Index j = 0; j < cond_.size(); ++j) {
      const double v = row[j];
      const auto arity = cond_[j][0].size();
      if (!(v >= 0.0) || v >= static_cast<double>(arity))
        throw Error("naive bayes: category index out of range in feature " + std::to_string(j));
      const auto c = static_cast<Index>(v);
      for (Index k = 0; k < priors_.size(); ++k) logp[k] += std::log(cond_[j][k][c]);
    }
    return softmax_log(logp);
  }

  nlohmann::json to_json() const override {
    return {{"format_version", kModelFormatVersion},
            {"type", "naive_bayes"},
            {"priors", priors_},
            {"conditionals", cond_}};
  }

  static NaiveBayesModel from_json(const nlohmann::json& j) {
    if (j.at("type") != "naive_bayes") throw Error("not a naive_bayes document");
    if (j.at("format_version") != kModelFormatVersion) throw Error("unsupported model version");
    return NaiveBayesModel(j.at("priors").get<std::vector<double>>(),
                           j.at("conditionals").get<std::vector<std::vector<std::vector<double>>>>());
  }

 private:
  std::vector<double> priors_;
  std::vector<std::vector<std::vector<double>>> cond_;
};

inline NaiveBayesModel nb_fit(const FitInput& in) {
  in.check();
  if (!in.data.all_nominal())
    throw Error("naive bayes needs nominal features; discretize continuous columns first");
  const int K = in.n_classes;
  const Index d = in.data.n_features();
  const auto w = in.normalized_weights();

  std::vector<double> class_w(K, 0.0);
  std::vector<std::vector<std::vector<double>>> counts(d);
  for (Index j = 0; j < d; ++j)
    counts[j].assign(K, std::vector<double>(in.data.kind(j).arity, 0.0));
  double total = 0.0;
  for (Index r = 0; r < in.rows.size(); ++r) {
    const int y = in.targets[r];
    class_w[y] += w[r];
    total += w[r];
    auto x = in.data.row(in.rows[r]);
    for (Index j = 0; j < d; ++j) counts[j][y][static_cast<Index>(x[j])] += w[r];
  }
  std::vector<double> priors(K);
  for (int k = 0; k < K; ++k) priors[k] = (class_w[k] + 1.0) / (total + K);
  for (Index j = 0; j < d; ++j) {
    const double arity = static_cast<double>(in.data.kind(j).arity);
    for (int k = 0; k < K; ++k)
      for (double& c : counts[j][k]) c = (c + 1.0) / (class_w[k] + arity);
  }
  return NaiveBayesModel(std::move(priors), std::move(counts));
}

inline std::vector<double> nb_predict_proba(const NaiveBayesModel& model,
                                            std::span<const double> row) {
  return model.predict_proba(row);
}

class NaiveBayesLearner final : public Learner {
 public:
  std::string name() const override { return "naive-bayes"; }
  ModelPtr fit(const FitInput& in) const override {
    return std::make_shared<NaiveBayesModel>(nb_fit(in));
  }
};

}  // namespace sslbench
