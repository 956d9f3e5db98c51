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

// Re-weighting by extrapolation. Labeled and unlabeled rows are grouped
// into score bands; within a band the labeled class mix, scaled by the
// sampling weight (|L_j| + |U_j|) / |L_j|, fixes how many unlabeled rows
// receive each class.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

struct GroupQuota {
  double weight = 1.0;
  std::vector<Index> quotas;  // unlabeled rows to assign per class
};

// Quotas for one band. The real-valued quota of class k is
// weight * n_k - n_k = n_k * |U_j| / |L_j|; these sum to |U_j| and are
// rounded by largest remainder (ties to the lower class).
inline GroupQuota extrapolate_group(const std::vector<Index>& labeled_counts, Index n_unlabeled) {
  Index n_labeled = 0;
  for (Index c : labeled_counts) n_labeled += c;
  if (n_labeled == 0) throw Error("extrapolate_group: band has no labeled rows");
  GroupQuota g;
  g.weight = static_cast<double>(n_labeled + n_unlabeled) / static_cast<double>(n_labeled);
  const Index K = labeled_counts.size();
  g.quotas.assign(K, 0);
  std::vector<Index> rem(K);  // remainder numerators over n_labeled, exact in integers
  Index assigned = 0;
  for (Index k = 0; k < K; ++k) {
    const Index num = labeled_counts[k] * n_unlabeled;
    g.quotas[k] = num / n_labeled;
    rem[k] = num % n_labeled;
    assigned += g.quotas[k];
  }
  std::vector<Index> order(K);
  for (Index k = 0; k < K; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return rem[a] > rem[b]; });
  for (Index r = 0; assigned < n_unlabeled; ++r, ++assigned) ++g.quotas[order[r % K]];
  return g;
}

// Equal-frequency band edges over `scores` (type-7 quantiles at j / n_bins).
inline std::vector<double> percentile_edges(std::vector<double> scores, int n_bins) {
  if (n_bins < 1) throw Error("percentile_edges: n_bins must be at least 1");
  std::sort(scores.begin(), scores.end());
  std::vector<double> edges;
  const double n = static_cast<double>(scores.size());
  for (int j = 1; j < n_bins; ++j) {
    const double h = (n - 1.0) * j / n_bins;
    const auto lo = static_cast<Index>(std::floor(h));
    const Index hi = std::min(lo + 1, scores.size() - 1);
    edges.push_back(scores[lo] + (h - static_cast<double>(lo)) * (scores[hi] - scores[lo]));
  }
  return edges;
}

// Band of a score: number of edges <= score. Scores past either end fall
// into the end bands.
inline Index band_of(double score, const std::vector<double>& edges) {
  return static_cast<Index>(std::upper_bound(edges.begin(), edges.end(), score) - edges.begin());
}

struct ReweightResult {
  ModelPtr initial_model;
  ModelPtr model;
  TrainingSet expanded;          // labeled rows, then the newly labeled rows
  std::vector<Index> added_rows;
  std::vector<int> added_labels;
  std::vector<double> edges;
  std::vector<GroupQuota> groups;  // one per band; bands without labeled rows keep weight 0
};

// Score = 1 - P(class 0), i.e. P(class 1) for binary data.
inline ReweightResult reweight_expand(const Dataset& data, const LabeledSplit& split, const Learner& base,
                                      int n_bins, std::uint64_t seed) {
  split.check(data);
  if (split.labeled.empty()) throw Error("reweight: no labeled rows");
  if (n_bins < 1) throw Error("reweight: n_bins must be at least 1");
  const int K = data.n_classes();

  ReweightResult res;
  res.expanded = TrainingSet::labeled(data, split.labeled);
  res.initial_model = base.fit(res.expanded.view(data, K));
  auto score = [&](Index i) { return 1.0 - res.initial_model->predict_proba(data.row(i))[0]; };

  std::vector<double> lab_scores;
  for (Index i : split.labeled) lab_scores.push_back(score(i));
  res.edges = percentile_edges(lab_scores, n_bins);

  const Index B = static_cast<Index>(n_bins);
  std::vector<std::vector<Index>> counts(B, std::vector<Index>(K, 0));
  for (Index r = 0; r < split.labeled.size(); ++r)
    ++counts[band_of(lab_scores[r], res.edges)][data.label(split.labeled[r])];
  std::vector<std::vector<Index>> band_u(B);
  for (Index i : split.unlabeled) band_u[band_of(score(i), res.edges)].push_back(i);

  Rng rng(seeds::derive(seed, "reweight"));
  res.groups.resize(B);
  for (Index b = 0; b < B; ++b) {
    Index nl = 0;
    for (Index c : counts[b]) nl += c;
    if (nl == 0) {
      res.groups[b].weight = 0.0;
      res.groups[b].quotas.assign(K, 0);
      continue;
    }
    res.groups[b] = extrapolate_group(counts[b], band_u[b].size());
    auto& pool = band_u[b];
    std::shuffle(pool.begin(), pool.end(), rng);
    Index pos = 0;
    for (int c = 0; c < K; ++c)
      for (Index q = 0; q < res.groups[b].quotas[c] && pos < pool.size(); ++q, ++pos) {
        res.added_rows.push_back(pool[pos]);
        res.added_labels.push_back(c);
        res.expanded.add(pool[pos], c);
      }
  }
  res.model = base.fit(res.expanded.view(data, K));
  return res;
}

}  // namespace sslbench
