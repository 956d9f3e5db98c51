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

// Runs one configured technique on one labeled/unlabeled split and scores
// the test set. Naive Bayes is the supervised learner throughout; learners
// that need nominal input see data discretized from the labeled rows.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "sslbench/bench/config.hpp"
#include "sslbench/core/discretize.hpp"
#include "sslbench/learners/biprobit.hpp"
#include "sslbench/learners/discretizing.hpp"
#include "sslbench/learners/naive_bayes.hpp"
#include "sslbench/learners/probit.hpp"
#include "sslbench/learners/tree.hpp"
#include "sslbench/ssl/assemble.hpp"
#include "sslbench/ssl/cc_mixture.hpp"
#include "sslbench/ssl/cotrain.hpp"
#include "sslbench/ssl/reweight.hpp"
#include "sslbench/ssl/sample_select.hpp"

namespace sslbench::bench {

// Everything a technique may see for one descriptor. `train` has the
// labels of unlabeled rows hidden.
class SplitContext {
 public:
  SplitContext(const Dataset& train_full, LabeledSplit split, const Dataset& test, std::uint64_t seed)
      : train_(hide_unlabeled(train_full, split)), split_(std::move(split)), test_(test), seed_(seed) {}

  const Dataset& train() const { return train_; }
  const LabeledSplit& split() const { return split_; }
  const Dataset& test() const { return test_; }
  std::uint64_t seed() const { return seed_; }

  // MDL cuts from the labeled rows, applied to train and test. Built on
  // first use; a context is used by one thread at a time.
  const Dataset& binned_train() const {
    ensure_binned();
    return *binned_train_;
  }
  const Dataset& binned_test() const {
    ensure_binned();
    return *binned_test_;
  }

 private:
  void ensure_binned() const {
    if (binned_train_) return;
    if (train_.all_nominal()) {
      binned_train_ = train_;
      binned_test_ = test_;
      return;
    }
    const auto map = discretize_mdl(train_, split_.labeled);
    binned_train_ = apply_cuts(train_, map);
    binned_test_ = apply_cuts(test_, map);
  }

  Dataset train_;
  LabeledSplit split_;
  const Dataset& test_;
  std::uint64_t seed_;
  mutable std::optional<Dataset> binned_train_, binned_test_;
};

struct TechniqueOutcome {
  std::vector<double> scores;  // P(class 1) per test row
  nlohmann::json meta = nlohmann::json::object();
};

inline std::vector<double> score_all(const Model& model, const Dataset& test) {
  std::vector<double> out(test.n_rows());
  for (Index i = 0; i < test.n_rows(); ++i) out[i] = model.predict_proba(test.row(i))[1];
  return out;
}

inline LearnerPtr naive_bayes() { return std::make_shared<NaiveBayesLearner>(); }

inline TechniqueOutcome run_technique(const TechniqueSpec& spec, const SplitContext& ctx) {
  const std::uint64_t seed = seeds::derive(ctx.seed(), spec.label());
  TechniqueOutcome out;
  const auto& name = spec.name;

  if (name == "supervised") {
    const auto train = TrainingSet::labeled(ctx.binned_train(), ctx.split().labeled);
    out.scores = score_all(*naive_bayes()->fit(train.view(ctx.binned_train())), ctx.binned_test());
  } else if (name == "cotrain") {
    CoTrainConfig cfg;
    cfg.confidence = spec.get("confidence", 0.95);
    cfg.folds = static_cast<int>(spec.get("folds", 10));
    cfg.learner_a = naive_bayes();
    cfg.learner_b = std::make_shared<TreeLearner>();
    cfg.seed = seed;
    const auto res = cotrain_fit(ctx.binned_train(), ctx.split(), cfg);
    out.scores = score_all(*res.combined(), ctx.binned_test());
    out.meta["rounds"] = res.rounds();
    out.meta["pool_a"] = res.pool_a.rows.size();
    out.meta["pool_b"] = res.pool_b.rows.size();
  } else if (name == "assemble-1nn" || name == "assemble-class0") {
    AssembleConfig cfg;
    cfg.alpha = spec.get("alpha", 1.0);
    cfg.beta = spec.get("beta", 0.9);
    cfg.T = static_cast<int>(spec.get("T", 50));
    cfg.init = name == "assemble-1nn" ? AssembleInit::kNearestNeighbor : AssembleInit::kMajorityClass;
    cfg.base = naive_bayes();
    cfg.seed = seed;
    const auto res = assemble_fit(ctx.binned_train(), ctx.split(), cfg, &ctx.train());
    out.scores = score_all(*res.model, ctx.binned_test());
    out.meta["members"] = res.model->members().size();
  } else if (name == "reweight") {
    const int bins = static_cast<int>(spec.get("n_bins", 10));
    const auto res = reweight_expand(ctx.binned_train(), ctx.split(), *naive_bayes(), bins, seed);
    out.scores = score_all(*res.model, ctx.binned_test());
    out.meta["added"] = res.added_rows.size();
  } else if (name == "sample-select") {
    const DiscretizingLearner base(naive_bayes());
    const auto res = sample_select_fit(ctx.train(), ctx.split(), base);
    out.scores = score_all(*res.model, ctx.test());
  } else if (name == "cc") {
    CCFitOptions opt;
    opt.M = static_cast<int>(spec.get("M", 6));
    opt.max_iter = static_cast<int>(spec.get("max_iter", 200));
    opt.tol = spec.get("tol", 1e-6);
    opt.seed = seed;
    const auto res = cc_fit(ctx.train(), ctx.split(), opt);
    out.scores = score_all(res.model, ctx.test());
    out.meta["iterations"] = res.iterations;
    out.meta["log_likelihood"] = res.model.log_likelihood();
  } else if (name == "probit") {
    const auto train = TrainingSet::labeled(ctx.train(), ctx.split().labeled);
    out.scores = score_all(*ProbitLearner().fit(train.view(ctx.train())), ctx.test());
  } else if (name == "biprobit") {
    const auto model = biprobit_model(ctx.train(), ctx.split());
    out.scores = score_all(model, ctx.test());
    out.meta["rho"] = model.rho();
    out.meta["converged"] = model.converged();
  } else {
    throw Error("unknown technique '" + name + "'");
  }
  return out;
}

}  // namespace sslbench::bench
