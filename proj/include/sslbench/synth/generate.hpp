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

// Artificial datasets named A_B_C_D:
//   A  percent of features that are independent N(0,1) draws
//   B  percent of the independent features that drive the label
//   C  percent of labels flipped at random
//   D  percent of rows in the positive (minority) class
//
// Pipeline over the pooled train+test rows:
//   1. independent columns ~ N(0, 1)
//   2. each dependent column = unit-norm random combination of 2..5
//      independent columns
//   3. additive N(0, 0.1) noise on every column
//   4. every column scaled by U[0.5, 2] and shifted by N(0, 1)
//   5. relevant columns re-standardized to mean 0, sd 1
//   6. score = w . x_relevant with w ~ N(0, 1), centered; the top D% of
//      the pool are positive
//   7. stratified assignment to train/test, then C% label flips in each
//
// Label flips draw from their own seeded stream, so runs that differ only
// in C share everything else.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sslbench/core/dataset.hpp"
#include "sslbench/synth/missingness.hpp"

namespace sslbench::synth {

struct SynthSpec {
  int n_features = 30;
  double pct_independent = 30.0;  // A
  double pct_relevant = 80.0;     // B
  double pct_noise = 0.0;         // C
  double pct_minority = 5.0;      // D
  Index n_train = 8000;
  Index n_test = 4000;
  std::uint64_t seed = 0;

  int n_independent() const {
    return static_cast<int>(std::lround(pct_independent * n_features / 100.0));
  }
  int n_relevant() const {
    return std::max(1, static_cast<int>(std::lround(pct_relevant * n_independent() / 100.0)));
  }

  std::string name() const {
    auto two = [](double v) {
      const long r = std::lround(v);
      return r < 10 ? "0" + std::to_string(r) : std::to_string(r);
    };
    return two(pct_independent) + "_" + two(pct_relevant) + "_" + two(pct_noise) + "_" +
           two(pct_minority);
  }

  void validate() const {
    if (n_features < 1) throw Error("synth: n_features must be positive");
    for (double v : {pct_independent, pct_relevant, pct_noise})
      if (!(v >= 0.0 && v <= 100.0)) throw Error("synth: percentages must lie in [0, 100]");
    if (!(pct_minority > 0.0 && pct_minority < 50.0))
      throw Error("synth: minority percentage must lie in (0, 50)");
    if (n_independent() < 1) throw Error("synth: spec yields no independent (hence no relevant) features");
    if (n_train < 10) throw Error("synth: n_train must be at least 10");
    if (n_test < 1) throw Error("synth: n_test must be positive");
  }
};

// Parses "A_B_C_D", e.g. "30_80_10_05".
inline SynthSpec parse_synth_name(const std::string& name) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = name.find('_', start);
    const std::string tok = name.substr(start, pos == std::string::npos ? pos : pos - start);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad dataset name '" + name + "'; expected A_B_C_D");
    parts.push_back(std::stod(tok));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4) throw Error("bad dataset name '" + name + "'; expected A_B_C_D");
  SynthSpec s;
  s.pct_independent = parts[0];
  s.pct_relevant = parts[1];
  s.pct_noise = parts[2];
  s.pct_minority = parts[3];
  return s;
}

struct ArtificialData {
  Dataset train;
  Dataset test;
  std::vector<Index> relevant;     // column indices that drive the label
  std::vector<double> weights;     // parallel to `relevant`
  double score_mean = 0.0;
  double threshold = 0.0;          // positive iff w.x - score_mean > threshold

  // Noise-free label implied by the stored generator state.
  int clean_label(std::span<const double> row) const {
    double score = 0.0;
    for (Index k = 0; k < relevant.size(); ++k) score += weights[k] * row[relevant[k]];
    return score - score_mean > threshold ? 1 : 0;
  }
};

inline ArtificialData generate_artificial(const SynthSpec& spec) {
  spec.validate();
  const Index n = spec.n_train + spec.n_test;
  const Index d = static_cast<Index>(spec.n_features);
  const Index n_ind = static_cast<Index>(spec.n_independent());
  const Index n_rel = static_cast<Index>(spec.n_relevant());

  Rng rng(seeds::derive(spec.seed, "artificial/features"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> cols(d, std::vector<double>(n));

  for (Index j = 0; j < n_ind; ++j)
    for (double& v : cols[j]) v = gauss(rng);

  for (Index j = n_ind; j < d; ++j) {
    std::uniform_int_distribution<Index> arity(2, 5);
    const Index k = std::min(arity(rng), n_ind);
    std::vector<Index> pool = iota_index(n_ind);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<double> coef(k);
    double norm = 0.0;
    for (double& c : coef) {
      c = gauss(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (double& c : coef) c /= norm;
    for (Index i = 0; i < n; ++i) {
      double v = 0.0;
      for (Index t = 0; t < k; ++t) v += coef[t] * cols[pool[t]][i];
      cols[j][i] = v;
    }
  }

  std::normal_distribution<double> noise(0.0, 0.1);
  for (auto& col : cols)
    for (double& v : col) v += noise(rng);

  std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
  for (auto& col : cols) {
    const double scale = scale_dist(rng), shift = gauss(rng);
    for (double& v : col) v = v * scale + shift;
  }

  std::vector<Index> relevant = iota_index(n_ind);
  std::shuffle(relevant.begin(), relevant.end(), rng);
  relevant.resize(n_rel);
  std::sort(relevant.begin(), relevant.end());
  for (Index j : relevant) {
    auto& col = cols[j];
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    for (double& v : col) v = (v - mean) / sd;
  }

  ArtificialData out;
  out.relevant = relevant;
  out.weights.resize(n_rel);
  for (double& w : out.weights) w = gauss(rng);

  std::vector<double> score(n, 0.0);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n_rel; ++k) score[i] += out.weights[k] * cols[relevant[k]][i];
  out.score_mean = std::accumulate(score.begin(), score.end(), 0.0) / static_cast<double>(n);
  for (double& s : score) s -= out.score_mean;
  const auto n_pos = static_cast<Index>(std::lround(spec.pct_minority * static_cast<double>(n) / 100.0));
  std::vector<double> sorted = score;
  std::sort(sorted.begin(), sorted.end());
  out.threshold = sorted[n - n_pos - 1];
  std::vector<int> labels(n);
  for (Index i = 0; i < n; ++i) labels[i] = score[i] > out.threshold ? 1 : 0;

  // Stratified train/test assignment.
  std::vector<Index> pos, neg;
  for (Index i = 0; i < n; ++i) (labels[i] ? pos : neg).push_back(i);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  const auto train_pos = static_cast<Index>(std::lround(static_cast<double>(pos.size()) *
                                                        static_cast<double>(spec.n_train) /
                                                        static_cast<double>(n)));
  const Index train_neg = spec.n_train - train_pos;
  std::vector<Index> train_rows(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(train_pos));
  train_rows.insert(train_rows.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(train_neg));
  std::vector<Index> test_rows(pos.begin() + static_cast<std::ptrdiff_t>(train_pos), pos.end());
  test_rows.insert(test_rows.end(), neg.begin() + static_cast<std::ptrdiff_t>(train_neg), neg.end());
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());

  std::vector<std::string> names(d);
  for (Index j = 0; j < d; ++j) names[j] = "x" + std::to_string(j);
  auto build = [&](const std::vector<Index>& rows) {
    std::vector<double> values;
    values.reserve(rows.size() * d);
    std::vector<int> y;
    y.reserve(rows.size());
    for (Index i : rows) {
      for (Index j = 0; j < d; ++j) values.push_back(cols[j][i]);
      y.push_back(labels[i]);
    }
    return Dataset(spec.name(), std::vector<FeatureKind>(d, FeatureKind::continuous()),
                   std::move(values), std::move(y), 2, names);
  };
  out.train = build(train_rows);
  out.test = build(test_rows);

  const double rate = spec.pct_noise / 100.0;
  if (rate > 0.0) {
    out.train = inject_label_noise(out.train, rate, seeds::derive(spec.seed, "artificial/noise/train"));
    out.test = inject_label_noise(out.test, rate, seeds::derive(spec.seed, "artificial/noise/test"));
  }
  return out;
}

// Heckman-style selection data with known ground truth. Coefficient
// vectors have n_features + 1 entries, intercept last.
struct HeckmanSpec {
  int n_features = 3;
  std::vector<double> beta;   // outcome
  std::vector<double> gamma;  // selection
  double rho = 0.0;
  Index n = 10000;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_features < 1) throw Error("heckman: n_features must be positive");
    if (!(std::fabs(rho) <= 1.0)) throw Error("heckman: |rho| must not exceed 1");
    if (beta.size() != static_cast<Index>(n_features) + 1 ||
        gamma.size() != static_cast<Index>(n_features) + 1)
      throw Error("heckman: coefficient vectors need n_features + 1 entries (intercept last)");
    if (n < 2) throw Error("heckman: need at least 2 rows");
  }
};

struct HeckmanData {
  Dataset data;        // every row keeps its true label
  LabeledSplit split;  // labeled iff the selection latent is positive
  HeckmanSpec truth;
};

inline HeckmanData generate_heckman(const HeckmanSpec& spec) {
  spec.validate();
  const Index d = static_cast<Index>(spec.n_features);
  Rng rng(seeds::derive(spec.seed, "heckman"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double cross = std::sqrt(std::max(0.0, 1.0 - spec.rho * spec.rho));

  std::vector<double> values(spec.n * d);
  std::vector<int> labels(spec.n);
  HeckmanData out;
  for (Index i = 0; i < spec.n; ++i) {
    double o1 = spec.beta[d], o2 = spec.gamma[d];
    for (Index j = 0; j < d; ++j) {
      const double x = gauss(rng);
      values[i * d + j] = x;
      o1 += spec.beta[j] * x;
      o2 += spec.gamma[j] * x;
    }
    const double u1 = gauss(rng);
    const double u2 = spec.rho * u1 + cross * gauss(rng);
    labels[i] = o1 + u1 > 0.0 ? 1 : 0;
    (o2 + u2 > 0.0 ? out.split.labeled : out.split.unlabeled).push_back(i);
  }
  std::vector<std::string> names(d);
  for (Index j = 0; j < d; ++j) names[j] = "x" + std::to_string(j);
  out.data = Dataset("heckman", std::vector<FeatureKind>(d, FeatureKind::continuous()),
                     std::move(values), std::move(labels), 2, std::move(names));
  out.truth = spec;
  return out;
}

}  // namespace sslbench::synth
