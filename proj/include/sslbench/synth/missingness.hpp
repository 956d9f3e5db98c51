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

// Labeled/unlabeled partitions under the three missing-label mechanisms,
// plus label noise and target binarization.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sslbench/core/dataset.hpp"

namespace sslbench::synth {

namespace detail {

inline void require_fully_labeled(const Dataset& data, const char* who) {
  for (Index i = 0; i < data.n_rows(); ++i)
    if (!data.has_label(i)) throw Error(std::string(who) + ": every row needs a label");
}

inline LabeledSplit from_mask(const std::vector<char>& labeled) {
  LabeledSplit s;
  for (Index i = 0; i < labeled.size(); ++i) (labeled[i] ? s.labeled : s.unlabeled).push_back(i);
  return s;
}

}  // namespace detail

// Missing completely at random: a uniform subset of round(fraction * n) rows.
inline LabeledSplit split_mcar(const Dataset& data, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("split_mcar: fraction must lie in (0, 1]");
  detail::require_fully_labeled(data, "split_mcar");
  const Index n = data.n_rows();
  const auto k = static_cast<Index>(std::lround(fraction * static_cast<double>(n)));
  if (k == 0) throw Error("split_mcar: fraction leaves no labeled rows");
  std::vector<Index> perm = iota_index(n);
  Rng rng(seeds::derive(seed, "split/mcar"));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<char> mask(n, 0);
  for (Index r = 0; r < k; ++r) mask[perm[r]] = 1;
  return detail::from_mask(mask);
}

// Unlabeled iff x_i <= c_i or x_j <= c_j.
inline LabeledSplit split_by_thresholds(const Dataset& data, Index i, Index j, double c_i, double c_j) {
  if (!std::isfinite(c_i) || !std::isfinite(c_j)) throw Error("split_mar: thresholds must be finite");
  std::vector<char> mask(data.n_rows());
  for (Index r = 0; r < data.n_rows(); ++r) mask[r] = !(data.at(r, i) <= c_i || data.at(r, j) <= c_j);
  return detail::from_mask(mask);
}

struct MarSplit {
  LabeledSplit split;
  double c_i = 0.0;
  double c_j = 0.0;
  double unlabeled_fraction = 0.0;
};

// Missing at random given two features. Both thresholds sit at the same
// marginal order statistic k; k is found by bisection on the (monotone)
// unlabeled count and the closer of the two bracketing steps is kept.
inline MarSplit split_mar(const Dataset& data, Index i, Index j, double target_unlabeled_fraction) {
  if (i >= data.n_features() || j >= data.n_features()) throw Error("split_mar: feature index out of range");
  if (!data.kind(i).is_continuous() || !data.kind(j).is_continuous())
    throw Error("split_mar: conditioning features must be continuous");
  if (!(target_unlabeled_fraction >= 0.0 && target_unlabeled_fraction < 1.0))
    throw Error("split_mar: target unlabeled fraction must lie in [0, 1)");
  detail::require_fully_labeled(data, "split_mar");
  const Index n = data.n_rows();
  auto xi = data.column(i), xj = data.column(j);
  std::vector<double> si = xi, sj = xj;
  std::sort(si.begin(), si.end());
  std::sort(sj.begin(), sj.end());

  // Threshold at step k: below the minimum for k = 0, else the k-th smallest.
  auto threshold = [](const std::vector<double>& s, Index k) {
    return k == 0 ? s.front() - 1.0 : s[k - 1];
  };
  auto unlabeled_at = [&](Index k) {
    const double ci = threshold(si, k), cj = threshold(sj, k);
    Index c = 0;
    for (Index r = 0; r < n; ++r) c += (xi[r] <= ci || xj[r] <= cj) ? 1 : 0;
    return c;
  };

  const double target = target_unlabeled_fraction * static_cast<double>(n);
  Index lo = 0, hi = n;  // smallest k with unlabeled_at(k) >= target lies in [lo, hi]
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    if (static_cast<double>(unlabeled_at(mid)) >= target) hi = mid;
    else lo = mid + 1;
  }
  Index k = lo;
  if (k > 0 && std::fabs(static_cast<double>(unlabeled_at(k - 1)) - target) <=
                   std::fabs(static_cast<double>(unlabeled_at(k)) - target))
    --k;

  MarSplit out;
  out.c_i = threshold(si, k);
  out.c_j = threshold(sj, k);
  out.split = split_by_thresholds(data, i, j, out.c_i, out.c_j);
  out.unlabeled_fraction = static_cast<double>(out.split.unlabeled.size()) / static_cast<double>(n);
  if (std::fabs(out.unlabeled_fraction - target_unlabeled_fraction) > 0.01)
    throw Error("split_mar: target fraction " + std::to_string(target_unlabeled_fraction) +
                " unachievable within one quantile step (best " +
                std::to_string(out.unlabeled_fraction) + ")");
  if (out.split.labeled.empty()) throw Error("split_mar: no labeled rows remain");
  return out;
}

// Missing not at random for an arbitrary labeled dataset. A latent u1 is
// drawn consistent with the observed label (positive half-normal for
// class > 0, negative for class 0); the selection latent is
// u2 = rho * u1 + sqrt(1 - rho^2) * e and the round(fraction * n) rows with
// the largest u2 are labeled. rho > 0 over-samples the positive class.
inline LabeledSplit split_mnar(const Dataset& data, double fraction, double rho, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error("split_mnar: fraction must lie in (0, 1]");
  if (!(std::fabs(rho) <= 1.0)) throw Error("split_mnar: |rho| must not exceed 1");
  detail::require_fully_labeled(data, "split_mnar");
  const Index n = data.n_rows();
  const auto k = static_cast<Index>(std::lround(fraction * static_cast<double>(n)));
  if (k == 0) throw Error("split_mnar: fraction leaves no labeled rows");
  Rng rng(seeds::derive(seed, "split/mnar"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double cross = std::sqrt(1.0 - rho * rho);
  std::vector<double> u2(n);
  for (Index r = 0; r < n; ++r) {
    const double mag = std::fabs(gauss(rng));
    const double u1 = data.label(r) > 0 ? mag : -mag;
    u2[r] = rho * u1 + cross * gauss(rng);
  }
  std::vector<Index> order = iota_index(n);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return u2[a] > u2[b]; });
  std::vector<char> mask(n, 0);
  for (Index r = 0; r < k; ++r) mask[order[r]] = 1;
  return detail::from_mask(mask);
}

// Flips exactly round(rate * n) distinct binary labels.
inline Dataset inject_label_noise(const Dataset& data, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw Error("inject_label_noise: rate must lie in [0, 1]");
  if (data.n_classes() != 2) throw Error("inject_label_noise: binary labels only");
  detail::require_fully_labeled(data, "inject_label_noise");
  const Index n = data.n_rows();
  const auto k = static_cast<Index>(std::lround(rate * static_cast<double>(n)));
  std::vector<Index> perm = iota_index(n);
  Rng rng(seeds::derive(seed, "label-noise"));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> labels = data.labels();
  for (Index r = 0; r < k; ++r) labels[perm[r]] = 1 - labels[perm[r]];
  return data.with_labels(std::move(labels));
}

// Turns a continuous column into the binary class (1 iff value > threshold)
// and drops it from the features. NaN targets become unlabeled rows.
inline Dataset binarize_target(const Dataset& data, Index target_col, double threshold) {
  if (target_col >= data.n_features()) throw Error("binarize_target: column out of range");
  if (!data.kind(target_col).is_continuous()) throw Error("binarize_target: target column must be continuous");
  const Index d = data.n_features();
  std::vector<FeatureKind> meta;
  std::vector<std::string> names;
  for (Index j = 0; j < d; ++j) {
    if (j == target_col) continue;
    meta.push_back(data.kind(j));
    if (!data.feature_names().empty()) names.push_back(data.feature_names()[j]);
  }
  std::vector<double> values;
  values.reserve(data.n_rows() * (d - 1));
  std::vector<int> labels(data.n_rows());
  for (Index i = 0; i < data.n_rows(); ++i) {
    for (Index j = 0; j < d; ++j)
      if (j != target_col) values.push_back(data.at(i, j));
    const double v = data.at(i, target_col);
    labels[i] = std::isnan(v) ? kMissingLabel : (v > threshold ? 1 : 0);
  }
  return Dataset(data.name(), std::move(meta), std::move(values), std::move(labels), 2, std::move(names));
}

}  // namespace sslbench::synth
