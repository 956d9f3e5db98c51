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

// Supervised entropy discretization with the minimum-description-length
// stopping rule (Fayyad & Irani, 1993).

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sslbench/core/dataset.hpp"

namespace sslbench {

// Cut points for every continuous column of the dataset it was built from.
// A value v falls in bin #{c in cuts : c <= v}, i.e. v >= cut goes right.
struct DiscretizationMap {
  std::vector<FeatureKind> source_meta;
  std::vector<Index> features;               // continuous column indices
  std::vector<std::vector<double>> cuts;     // parallel to `features`

  const std::vector<double>* cuts_for(Index column) const {
    for (Index f = 0; f < features.size(); ++f)
      if (features[f] == column) return &cuts[f];
    return nullptr;
  }
};

inline int bin_of(double value, const std::vector<double>& cuts) {
  return static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

namespace detail {

inline double entropy(const std::vector<Index>& counts, Index total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (Index c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

inline int classes_present(const std::vector<Index>& counts) {
  int k = 0;
  for (Index c : counts) k += c > 0;
  return k;
}

// Recursive MDL splitting of sorted (value, class) pairs in [lo, hi).
inline void mdl_split(const std::vector<std::pair<double, int>>& sorted, Index lo, Index hi,
                      int n_classes, std::vector<double>& cuts) {
  const Index n = hi - lo;
  if (n < 2) return;
  std::vector<Index> total(n_classes, 0);
  for (Index i = lo; i < hi; ++i) ++total[sorted[i].second];
  const double ent_all = entropy(total, n);
  if (ent_all == 0.0) return;

  std::vector<Index> left(n_classes, 0), right;
  std::vector<Index> best_left, best_right;
  double best = std::numeric_limits<double>::infinity();
  Index best_at = 0;
  for (Index i = lo + 1; i < hi; ++i) {
    ++left[sorted[i - 1].second];
    if (!(sorted[i - 1].first < sorted[i].first)) continue;
    right = total;
    for (int k = 0; k < n_classes; ++k) right[k] -= left[k];
    const Index nl = i - lo, nr = hi - i;
    const double e = (static_cast<double>(nl) * entropy(left, nl) +
                      static_cast<double>(nr) * entropy(right, nr)) /
                     static_cast<double>(n);
    if (e < best) {
      best = e;
      best_at = i;
      best_left = left;
      best_right = right;
    }
  }
  if (best_at == 0) return;

  const Index nl = best_at - lo, nr = hi - best_at;
  const double ent_l = entropy(best_left, nl), ent_r = entropy(best_right, nr);
  const double gain = ent_all - best;
  const int k = classes_present(total), k1 = classes_present(best_left),
            k2 = classes_present(best_right);
  const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (k * ent_all - k1 * ent_l - k2 * ent_r);
  const double threshold =
      (std::log2(static_cast<double>(n - 1)) + delta) / static_cast<double>(n);
  if (!(gain > threshold)) return;

  mdl_split(sorted, lo, best_at, n_classes, cuts);
  cuts.push_back(0.5 * (sorted[best_at - 1].first + sorted[best_at].first));
  mdl_split(sorted, best_at, hi, n_classes, cuts);
}

}  // namespace detail

// MDL cut points for one column given class labels.
inline std::vector<double> mdl_cuts(std::span<const double> values, std::span<const int> classes,
                                    int n_classes) {
  if (values.size() != classes.size()) throw Error("mdl_cuts: length mismatch");
  std::vector<std::pair<double, int>> sorted(values.size());
  for (Index i = 0; i < values.size(); ++i) sorted[i] = {values[i], classes[i]};
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  detail::mdl_split(sorted, 0, sorted.size(), n_classes, cuts);
  return cuts;
}

// Builds cut points from the labeled rows `idx` only.
inline DiscretizationMap discretize_mdl(const Dataset& data, std::span<const Index> idx) {
  if (idx.empty()) throw Error("discretize_mdl: empty row set");
  std::vector<int> classes;
  classes.reserve(idx.size());
  for (Index i : idx) {
    if (i >= data.n_rows() || !data.has_label(i))
      throw Error("discretize_mdl: row " + std::to_string(i) + " is not a labeled row");
    classes.push_back(data.label(i));
  }
  DiscretizationMap map;
  map.source_meta = data.meta();
  std::vector<double> column(idx.size());
  for (Index j = 0; j < data.n_features(); ++j) {
    if (!data.kind(j).is_continuous()) continue;
    for (Index r = 0; r < idx.size(); ++r) column[r] = data.at(idx[r], j);
    map.features.push_back(j);
    map.cuts.push_back(mdl_cuts(column, classes, data.n_classes()));
  }
  return map;
}

// Replaces each continuous column by its bin index; nominal columns pass
// through. The map must have been built on a dataset with identical meta,
// so an already discretized dataset is rejected.
inline Dataset apply_cuts(const Dataset& data, const DiscretizationMap& map) {
  if (data.meta() != map.source_meta)
    throw Error("apply_cuts: dataset meta does not match the discretization map");
  std::vector<FeatureKind> meta = data.meta();
  for (Index f = 0; f < map.features.size(); ++f)
    meta[map.features[f]] = {FeatureKind::Type::kNominal,
                             std::max<int>(2, static_cast<int>(map.cuts[f].size()) + 1)};
  std::vector<double> values = data.values();
  const Index d = data.n_features();
  for (Index f = 0; f < map.features.size(); ++f) {
    const Index j = map.features[f];
    for (Index i = 0; i < data.n_rows(); ++i)
      values[i * d + j] = bin_of(values[i * d + j], map.cuts[f]);
  }
  return Dataset(data.name(), std::move(meta), std::move(values), data.labels(),
                 data.n_classes(), data.feature_names());
}

}  // namespace sslbench
