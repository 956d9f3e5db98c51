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

// Co-training with two learners of different hypothesis spaces. Each
// round, classifier A offers to label unlabeled rows for B (and B for A).
// A's batch for class k is accepted when
//
//   (i)  h_Ak > l_B                   per-class upper bound of A beats
//                                     B's overall lower bound
//   (ii) q_k > q_B                    the enlarged, noisier pool still
//                                     lowers the error bound
//
//   q_B = m (1 - 2 (2 w_B / m))^2                  m  = |L u L_B|
//   q_k = m' (1 - 2 (w_B + w_k) / m')^2            m' = m + |U_k|
//   w_k = (1 - l_Ak) |U_k|
//
// Intervals are normal-approximation binomial intervals on pooled
// out-of-fold predictions of k-fold cross-validation over each
// classifier's current training pool. The per-class interval of A is the
// precision of A's class-k predictions.

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

// Conservative 1/eps^2 estimate for the receiving classifier's pool.
inline double cotrain_q_b(double pool_size, double w_b) {
  const double t = 1.0 - 2.0 * (2.0 * w_b / pool_size);
  return pool_size * t * t;
}

// Same estimate after adding `batch_size` rows of class k.
inline double cotrain_q_k(double pool_size, double batch_size, double w_b, double w_k) {
  const double m = pool_size + batch_size;
  const double t = 1.0 - 2.0 * (w_b + w_k) / m;
  return m * t * t;
}

inline double cotrain_w_k(double lower_k, double batch_size) { return (1.0 - lower_k) * batch_size; }

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// p +- z sqrt(p (1 - p) / n), clipped to [0, 1].
inline Interval binomial_interval(double successes, double trials, double confidence) {
  const double z = boost::math::quantile(boost::math::normal(), 0.5 * (1.0 + confidence));
  const double p = successes / trials;
  const double half = z * std::sqrt(p * (1.0 - p) / trials);
  return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

struct CvIntervals {
  Interval overall;
  std::vector<std::optional<Interval>> per_class;  // empty when class never predicted
};

// k-fold CV on a training pool; intervals from the pooled out-of-fold
// predictions. Returns nothing when the pool has fewer than 2 rows.
inline std::optional<CvIntervals> cv_intervals(const Learner& learner, const Dataset& data,
                                               const TrainingSet& pool, int n_classes, int folds,
                                               double confidence, std::uint64_t seed) {
  const Index n = pool.rows.size();
  if (n < 2) return std::nullopt;
  const Index k = std::min<Index>(static_cast<Index>(folds), n);
  std::vector<Index> perm = iota_index(n);
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> predicted(n);
  for (Index f = 0; f < k; ++f) {
    TrainingSet train;
    std::vector<Index> held;
    for (Index r = 0; r < n; ++r) {
      const Index p = perm[r];
      if (r % k == f) held.push_back(p);
      else train.add(pool.rows[p], pool.targets[p]);
    }
    const auto model = learner.fit(train.view(data, n_classes));
    for (Index p : held) predicted[p] = model->predict(data.row(pool.rows[p]));
  }
  CvIntervals out;
  double correct = 0.0;
  std::vector<double> hits(n_classes, 0.0), calls(n_classes, 0.0);
  for (Index r = 0; r < n; ++r) {
    const bool ok = predicted[r] == pool.targets[r];
    correct += ok;
    calls[predicted[r]] += 1.0;
    hits[predicted[r]] += ok;
  }
  out.overall = binomial_interval(correct, static_cast<double>(n), confidence);
  out.per_class.resize(n_classes);
  for (int c = 0; c < n_classes; ++c)
    if (calls[c] > 0.0) out.per_class[c] = binomial_interval(hits[c], calls[c], confidence);
  return out;
}

struct CoTrainConfig {
  double confidence = 0.95;
  LearnerPtr learner_a;
  LearnerPtr learner_b;
  int folds = 10;
  double k = 1.0;  // noise constant; enters only the documented m-eta-eps relation
  std::uint64_t seed = 0;

  void validate() const {
    if (!learner_a || !learner_b) throw Error("cotrain: both learners are required");
    if (!(confidence > 0.0 && confidence < 1.0)) throw Error("cotrain: confidence must lie in (0, 1)");
    if (folds < 2) throw Error("cotrain: folds must be at least 2");
  }
};

// Arithmetic mean of the two posteriors.
class AveragedModel final : public Model {
 public:
  AveragedModel(ModelPtr a, ModelPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  int n_classes() const override { return a_->n_classes(); }
  std::vector<double> predict_proba(std::span<const double> row) const override {
    auto p = a_->predict_proba(row);
    const auto q = b_->predict_proba(row);
    for (Index c = 0; c < p.size(); ++c) p[c] = 0.5 * (p[c] + q[c]);
    return p;
  }
  nlohmann::json to_json() const override {
    return {{"format_version", kModelFormatVersion},
            {"type", "averaged"},
            {"a", a_->to_json()},
            {"b", b_->to_json()}};
  }

 private:
  ModelPtr a_, b_;
};

inline std::vector<double> cotrain_predict_proba(const Model& a, const Model& b, std::span<const double> row) {
  auto p = a.predict_proba(row);
  const auto q = b.predict_proba(row);
  for (Index c = 0; c < p.size(); ++c) p[c] = 0.5 * (p[c] + q[c]);
  return p;
}

struct CoTrainResult {
  ModelPtr model_a;
  ModelPtr model_b;
  TrainingSet pool_a;  // L plus rows labeled by B for A
  TrainingSet pool_b;  // L plus rows labeled by A for B
  double w_a = 0.0;
  double w_b = 0.0;
  std::vector<Index> labeled_per_round;  // rows removed from U in each round
  std::vector<Index> remaining;          // unlabeled rows never labeled

  int rounds() const { return static_cast<int>(labeled_per_round.size()); }
  std::shared_ptr<AveragedModel> combined() const { return std::make_shared<AveragedModel>(model_a, model_b); }
};

namespace detail {

struct Proposal {
  std::vector<std::vector<Index>> batches;  // accepted rows per class
};

// Rows of `candidates` that `giver` may label for the receiving pool.
inline Proposal propose(const Model& giver, const CvIntervals& giver_cv, const CvIntervals& receiver_cv,
                        const Dataset& data, const std::vector<Index>& candidates, double pool_size,
                        double w_receiver, int n_classes) {
  std::vector<std::vector<Index>> by_class(n_classes);
  for (Index u : candidates) by_class[giver.predict(data.row(u))].push_back(u);
  Proposal out;
  out.batches.resize(n_classes);
  const double q_b = cotrain_q_b(pool_size, w_receiver);
  for (int c = 0; c < n_classes; ++c) {
    if (by_class[c].empty() || !giver_cv.per_class[c]) continue;
    const Interval& iv = *giver_cv.per_class[c];
    if (!(iv.hi > receiver_cv.overall.lo)) continue;
    const double size = static_cast<double>(by_class[c].size());
    const double w_k = cotrain_w_k(iv.lo, size);
    if (!(cotrain_q_k(pool_size, size, w_receiver, w_k) > q_b)) continue;
    out.batches[c] = std::move(by_class[c]);
  }
  return out;
}

}  // namespace detail

// Both classifiers evaluate their tests against the same round-start
// unlabeled set; a row claimed by both goes to B's pool (labeled by A).
// Cross-validation is re-run every round.
inline CoTrainResult cotrain_fit(const Dataset& data, const LabeledSplit& split, const CoTrainConfig& cfg) {
  cfg.validate();
  split.check(data);
  if (split.labeled.empty()) throw Error("cotrain: no labeled rows");
  const int K = data.n_classes();

  CoTrainResult res;
  res.pool_a = TrainingSet::labeled(data, split.labeled);
  res.pool_b = res.pool_a;
  std::vector<Index> remaining = split.unlabeled;

  for (int round = 0;; ++round) {
    res.model_a = cfg.learner_a->fit(res.pool_a.view(data, K));
    res.model_b = cfg.learner_b->fit(res.pool_b.view(data, K));
    if (remaining.empty()) break;

    const auto round_seed = seeds::combine(cfg.seed, static_cast<std::uint64_t>(round));
    const auto cv_a = cv_intervals(*cfg.learner_a, data, res.pool_a, K, cfg.folds, cfg.confidence,
                                   seeds::derive(round_seed, "cv/a"));
    const auto cv_b = cv_intervals(*cfg.learner_b, data, res.pool_b, K, cfg.folds, cfg.confidence,
                                   seeds::derive(round_seed, "cv/b"));
    if (!cv_a || !cv_b) break;

    const auto for_b = detail::propose(*res.model_a, *cv_a, *cv_b, data, remaining,
                                       static_cast<double>(res.pool_b.rows.size()), res.w_b, K);
    const auto for_a = detail::propose(*res.model_b, *cv_b, *cv_a, data, remaining,
                                       static_cast<double>(res.pool_a.rows.size()), res.w_a, K);

    std::vector<char> taken(data.n_rows(), 0);
    Index added = 0;
    for (int c = 0; c < K; ++c) {
      if (for_b.batches[c].empty()) continue;
      res.w_b += cotrain_w_k((*cv_a->per_class[c]).lo, static_cast<double>(for_b.batches[c].size()));
      for (Index u : for_b.batches[c]) {
        res.pool_b.add(u, c);
        taken[u] = 1;
        ++added;
      }
    }
    for (int c = 0; c < K; ++c) {
      Index used = 0;
      for (Index u : for_a.batches[c]) {
        if (taken[u]) continue;
        res.pool_a.add(u, c);
        taken[u] = 1;
        ++used;
      }
      if (used) res.w_a += cotrain_w_k((*cv_b->per_class[c]).lo, static_cast<double>(used));
      added += used;
    }
    if (added == 0) break;
    res.labeled_per_round.push_back(added);
    std::erase_if(remaining, [&](Index u) { return taken[u] != 0; });
  }
  res.remaining = std::move(remaining);
  return res;
}

}  // namespace sslbench
