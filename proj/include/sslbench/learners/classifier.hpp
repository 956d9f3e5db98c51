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

// Uniform contract for probabilistic classifiers.
//
// A Learner turns (rows, targets, weights) of a Dataset into an immutable
// Model; a Model maps one feature row to a class distribution. Targets are
// passed separately from the Dataset so that pseudo-labels and selection
// indicators can be trained on without copying the feature table.

#pragma once

#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sslbench/core/dataset.hpp"

namespace sslbench {

struct FitInput {
  const Dataset& data;
  std::span<const Index> rows;
  std::span<const int> targets;   // one per row, in [0, n_classes)
  std::span<const double> weights;  // one per row, or empty for unit weights
  int n_classes = 2;

  double weight(Index r) const { return weights.empty() ? 1.0 : weights[r]; }

  void check() const {
    if (rows.empty()) throw Error("fit: empty training set");
    if (targets.size() != rows.size()) throw Error("fit: target count mismatch");
    if (!weights.empty() && weights.size() != rows.size())
      throw Error("fit: weight count mismatch");
    double total = 0.0;
    for (Index r = 0; r < rows.size(); ++r) {
      if (rows[r] >= data.n_rows()) throw Error("fit: row index out of range");
      if (targets[r] < 0 || targets[r] >= n_classes) throw Error("fit: target out of range");
      if (!(weight(r) >= 0.0)) throw Error("fit: negative weight");
      total += weight(r);
    }
    if (!(total > 0.0)) throw Error("fit: all weights are zero");
  }

  // Weights rescaled to mean 1 over the fit rows. Smoothed estimators use
  // these so that a uniform rescaling of the input weights is a no-op.
  std::vector<double> normalized_weights() const {
    std::vector<double> w(rows.size());
    double total = 0.0;
    for (Index r = 0; r < rows.size(); ++r) total += (w[r] = weight(r));
    const double scale = static_cast<double>(rows.size()) / total;
    for (double& x : w) x *= scale;
    return w;
  }
};

// Owning storage for a FitInput.
struct TrainingSet {
  std::vector<Index> rows;
  std::vector<int> targets;
  std::vector<double> weights;

  // Rows with their own labels from `data`.
  static TrainingSet labeled(const Dataset& data, std::span<const Index> rows) {
    TrainingSet t;
    t.rows.assign(rows.begin(), rows.end());
    for (Index i : rows) {
      if (!data.has_label(i)) throw Error("training row " + std::to_string(i) + " has no label");
      t.targets.push_back(data.label(i));
    }
    return t;
  }

  void add(Index row, int target, double weight = 1.0) {
    rows.push_back(row);
    targets.push_back(target);
    if (!weights.empty() || weight != 1.0) {
      if (weights.empty()) weights.assign(rows.size() - 1, 1.0);
      weights.push_back(weight);
    }
  }

  FitInput view(const Dataset& data, int n_classes) const {
    return FitInput{data, rows, targets, weights, n_classes};
  }
  FitInput view(const Dataset& data) const { return view(data, data.n_classes()); }
};

class Model {
 public:
  virtual ~Model() = default;
  virtual int n_classes() const = 0;
  virtual std::vector<double> predict_proba(std::span<const double> row) const = 0;
  virtual nlohmann::json to_json() const = 0;

  int predict(std::span<const double> row) const {
    const auto p = predict_proba(row);
    return static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  }
};

using ModelPtr = std::shared_ptr<const Model>;

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual ModelPtr fit(const FitInput& input) const = 0;
};

using LearnerPtr = std::shared_ptr<const Learner>;

// P(class `positive`) for each row of `data` (all rows when `rows` empty).
inline std::vector<double> score_rows(const Model& model, const Dataset& data,
                                      std::span<const Index> rows = {}, int positive = 1) {
  std::vector<double> out;
  if (rows.empty()) {
    out.reserve(data.n_rows());
    for (Index i = 0; i < data.n_rows(); ++i) out.push_back(model.predict_proba(data.row(i))[positive]);
  } else {
    out.reserve(rows.size());
    for (Index i : rows) out.push_back(model.predict_proba(data.row(i))[positive]);
  }
  return out;
}

inline void normalize_in_place(std::vector<double>& p) {
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
}

// Normalized exp of log-scores.
inline std::vector<double> softmax_log(const std::vector<double>& log_scores) {
  const double m = *std::max_element(log_scores.begin(), log_scores.end());
  std::vector<double> p(log_scores.size());
  for (Index k = 0; k < p.size(); ++k) p[k] = std::exp(log_scores[k] - m);
  normalize_in_place(p);
  return p;
}

inline constexpr int kModelFormatVersion = 1;

}  // namespace sslbench
