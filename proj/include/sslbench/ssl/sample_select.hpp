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

#include <memory>
#include <vector>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

// Appends P(labeled = 1 | x) from a selection model as an extra feature
// before the outcome model sees the row.
class SampleSelectModel final : public Model {
 public:
  SampleSelectModel(ModelPtr selection, ModelPtr outcome)
      : selection_(std::move(selection)), outcome_(std::move(outcome)) {}

  int n_classes() const override { return outcome_->n_classes(); }
  const Model& selection() const { return *selection_; }
  const Model& outcome() const { return *outcome_; }

  double selection_score(std::span<const double> row) const { return selection_->predict_proba(row)[1]; }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    std::vector<double> aug(row.begin(), row.end());
    aug.push_back(selection_score(row));
    return outcome_->predict_proba(aug);
  }

  nlohmann::json to_json() const override {
    return {{"format_version", kModelFormatVersion},
            {"type", "sample_select"},
            {"selection", selection_->to_json()},
            {"outcome", outcome_->to_json()}};
  }

 private:
  ModelPtr selection_;
  ModelPtr outcome_;
};

struct SampleSelectResult {
  std::shared_ptr<SampleSelectModel> model;
  Dataset augmented;  // labeled rows with the selection score appended
};

// `base` must accept a continuous column (wrap nominal learners in a
// DiscretizingLearner).
inline SampleSelectResult sample_select_fit(const Dataset& data, const LabeledSplit& split, const Learner& base) {
  split.check(data);
  if (split.labeled.empty()) throw Error("sample-select: no labeled rows");
  if (split.unlabeled.empty()) throw Error("sample-select: unlabeled pool is empty; labeled indicator is constant");

  TrainingSet sel;
  const auto mask = split.labeled_mask(data.n_rows());
  for (Index i = 0; i < data.n_rows(); ++i) sel.add(i, mask[i] ? 1 : 0);
  ModelPtr selection = base.fit(sel.view(data, 2));

  std::vector<double> score;
  score.reserve(split.labeled.size());
  for (Index i : split.labeled) score.push_back(selection->predict_proba(data.row(i))[1]);
  SampleSelectResult res;
  res.augmented = data.subset(split.labeled).append_continuous(score, "p_labeled");

  const auto rows = iota_index(split.labeled.size());
  const auto train = TrainingSet::labeled(res.augmented, rows);
  ModelPtr outcome = base.fit(train.view(res.augmented, data.n_classes()));
  res.model = std::make_shared<SampleSelectModel>(std::move(selection), std::move(outcome));
  return res;
}

}  // namespace sslbench
