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

// Small fixtures shared by the unit tests.

#pragma once

#include <random>
#include <vector>

#include "sslbench/sslbench.hpp"

namespace sslbench::fixtures {

// Two Gaussian classes in `d` continuous dimensions, class 1 shifted by
// `shift` along every axis.
inline Dataset gaussian_classes(Index n, Index d, double shift, std::uint64_t seed, double p1 = 0.5) {
  Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::bernoulli_distribution coin(p1);
  std::vector<double> values;
  std::vector<int> labels;
  for (Index i = 0; i < n; ++i) {
    const int y = coin(rng) ? 1 : 0;
    labels.push_back(y);
    for (Index j = 0; j < d; ++j) values.push_back(z(rng) + (y ? shift : 0.0));
  }
  return Dataset("gauss", std::vector<FeatureKind>(d, FeatureKind::continuous()), values, labels, 2);
}

// Nominal data: each of `d` binary features copies the label with
// probability `agree`.
inline Dataset nominal_classes(Index n, Index d, double agree, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5), keep(agree);
  std::vector<double> values;
  std::vector<int> labels;
  for (Index i = 0; i < n; ++i) {
    const int y = coin(rng) ? 1 : 0;
    labels.push_back(y);
    for (Index j = 0; j < d; ++j) values.push_back(keep(rng) ? y : 1 - y);
  }
  return Dataset("nominal", std::vector<FeatureKind>(d, FeatureKind::nominal(2)), values, labels, 2);
}

inline std::vector<int> test_labels(const Dataset& d) {
  std::vector<int> y(d.n_rows());
  for (Index i = 0; i < d.n_rows(); ++i) y[i] = d.label(i);
  return y;
}

inline std::vector<double> scores_of(const Model& m, const Dataset& d) {
  std::vector<double> s(d.n_rows());
  for (Index i = 0; i < d.n_rows(); ++i) s[i] = m.predict_proba(d.row(i))[1];
  return s;
}

}  // namespace sslbench::fixtures
