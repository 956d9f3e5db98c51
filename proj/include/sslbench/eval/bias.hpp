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

#include <string>
#include <vector>

#include "sslbench/core/dataset.hpp"
#include "sslbench/eval/stats.hpp"

namespace sslbench::eval {

struct FeatureShift {
  Index feature = 0;
  bool continuous = true;  // KS for continuous, chi-squared for nominal
  TestResult test;
};

// Per-feature test of labeled vs unlabeled feature distributions.
struct BiasReport {
  std::vector<FeatureShift> features;

  int different() const {
    int p = 0;
    for (const auto& f : features) p += f.test.reject_at_05;
    return p;
  }
  int tested() const { return static_cast<int>(features.size()); }
  std::string summary() const {
    return std::to_string(different()) + " out of " + std::to_string(tested()) + " different";
  }
};

inline BiasReport bias_report(const Dataset& data, const LabeledSplit& split) {
  if (split.labeled.empty() || split.unlabeled.empty())
    throw Error("bias_report: both pools must be non-empty");
  BiasReport rep;
  for (Index j = 0; j < data.n_features(); ++j) {
    FeatureShift fs;
    fs.feature = j;
    if (data.kind(j).is_continuous()) {
      std::vector<double> a, b;
      for (Index i : split.labeled) a.push_back(data.at(i, j));
      for (Index i : split.unlabeled) b.push_back(data.at(i, j));
      fs.test = ks_two_sample(a, b);
    } else {
      fs.continuous = false;
      std::vector<std::vector<double>> table(data.kind(j).arity, std::vector<double>(2, 0.0));
      for (Index i : split.labeled) table[static_cast<Index>(data.at(i, j))][0] += 1.0;
      for (Index i : split.unlabeled) table[static_cast<Index>(data.at(i, j))][1] += 1.0;
      fs.test = chi2_test(table);
    }
    rep.features.push_back(fs);
  }
  return rep;
}

}  // namespace sslbench::eval
