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

#include "sslbench/core/discretize.hpp"
#include "sslbench/learners/classifier.hpp"

namespace sslbench {

// Bins continuous columns of a single row with `map`, leaving nominal
// columns untouched.
inline std::vector<double> bin_row(std::span<const double> row, const DiscretizationMap& map) {
  std::vector<double> out(row.begin(), row.end());
  for (Index f = 0; f < map.features.size(); ++f)
    out[map.features[f]] = bin_of(out[map.features[f]], map.cuts[f]);
  return out;
}

class DiscretizedModel final : public Model {
 public:
  DiscretizedModel(DiscretizationMap map, ModelPtr inner) : map_(std::move(map)), inner_(std::move(inner)) {}

  int n_classes() const override { return inner_->n_classes(); }
  const DiscretizationMap& map() const { return map_; }
  const Model& inner() const { return *inner_; }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    if (row.size() != map_.source_meta.size()) throw Error("discretized model: row width mismatch");
    return inner_->predict_proba(bin_row(row, map_));
  }

  nlohmann::json to_json() const override {
    nlohmann::json cuts = nlohmann::json::array();
    for (Index f = 0; f < map_.features.size(); ++f)
      cuts.push_back({{"feature", map_.features[f]}, {"cuts", map_.cuts[f]}});
    return {{"format_version", kModelFormatVersion},
            {"type", "discretized"},
            {"cuts", cuts},
            {"inner", inner_->to_json()}};
  }

 private:
  DiscretizationMap map_;
  ModelPtr inner_;
};

// Wraps a nominal-only learner. Continuous columns are MDL-discretized
// against the fit targets of the fit rows, so the cut points never see
// rows outside the training set.
class DiscretizingLearner final : public Learner {
 public:
  explicit DiscretizingLearner(LearnerPtr inner) : inner_(std::move(inner)) {}

  std::string name() const override { return inner_->name(); }

  ModelPtr fit(const FitInput& in) const override {
    in.check();
    if (in.data.all_nominal()) return inner_->fit(in);
    DiscretizationMap map;
    map.source_meta = in.data.meta();
    std::vector<double> column(in.rows.size());
    for (Index j = 0; j < in.data.n_features(); ++j) {
      if (!in.data.kind(j).is_continuous()) continue;
      for (Index r = 0; r < in.rows.size(); ++r) column[r] = in.data.at(in.rows[r], j);
      map.features.push_back(j);
      map.cuts.push_back(mdl_cuts(column, in.targets, in.n_classes));
    }
    const Dataset binned = apply_cuts(in.data.subset(in.rows), map);
    const auto rows = iota_index(in.rows.size());
    ModelPtr inner = inner_->fit(FitInput{binned, rows, in.targets, in.weights, in.n_classes});
    return std::make_shared<DiscretizedModel>(std::move(map), std::move(inner));
  }

 private:
  LearnerPtr inner_;
};

}  // namespace sslbench
