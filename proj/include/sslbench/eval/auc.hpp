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

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "sslbench/common.hpp"

namespace sslbench::eval {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

// ROC curve swept over distinct score thresholds, highest first. Tied
// scores move both rates in one step, so the trapezoid under a tie counts
// each tied positive/negative pair as one half.
inline std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error("roc_curve: length mismatch");
  Index n_pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error("roc_curve: labels must be 0/1");
    n_pos += y == 1;
  }
  const Index n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw Error("roc_curve: need both classes");

  std::vector<Index> order(scores.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> curve{{0.0, 0.0}};
  Index tp = 0, fp = 0;
  for (Index k = 0; k < order.size();) {
    const double s = scores[order[k]];
    while (k < order.size() && scores[order[k]] == s) {
      (labels[order[k]] == 1 ? tp : fp) += 1;
      ++k;
    }
    curve.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                     static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  curve.back() = {1.0, 1.0};
  return curve;
}

inline double trapezoid_area(const std::vector<RocPoint>& curve) {
  double area = 0.0;
  for (Index k = 1; k < curve.size(); ++k)
    area += (curve[k].fpr - curve[k - 1].fpr) * (curve[k].tpr + curve[k - 1].tpr) * 0.5;
  return area;
}

// Raw ROC area in [0, 1].
inline double auc_raw(std::span<const double> scores, std::span<const int> labels) {
  return trapezoid_area(roc_curve(scores, labels));
}

// AUC := 2 * auc - 1, so a random ranking scores 0 and a reversed one -1.
inline double auc_normalized(std::span<const double> scores, std::span<const int> labels) {
  return 2.0 * auc_raw(scores, labels) - 1.0;
}

}  // namespace sslbench::eval
