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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace sslbench;

namespace {

LearnerPtr nb() { return std::make_shared<NaiveBayesLearner>(); }

LabeledSplit every_kth_labeled(Index n, Index k) {
  LabeledSplit s;
  for (Index i = 0; i < n; ++i) (i % k == 0 ? s.labeled : s.unlabeled).push_back(i);
  return s;
}

// Predicts the opposite of whatever it was trained on, for forcing a
// first-round error of 1.
class ContrarianModel final : public Model {
 public:
  int n_classes() const override { return 2; }
  std::vector<double> predict_proba(std::span<const double> row) const override {
    return row[0] > 0.5 ? std::vector<double>{0.9, 0.1} : std::vector<double>{0.1, 0.9};
  }
  nlohmann::json to_json() const override { return {{"type", "contrarian"}}; }
};
class FixedModel final : public Model {
 public:
  explicit FixedModel(std::vector<double> p) : p_(std::move(p)) {}
  int n_classes() const override { return static_cast<int>(p_.size()); }
  std::vector<double> predict_proba(std::span<const double>) const override { return p_; }
  nlohmann::json to_json() const override { return {{"type", "fixed"}}; }

 private:
  std::vector<double> p_;
};

class ContrarianLearner final : public Learner {
 public:
  std::string name() const override { return "contrarian"; }
  ModelPtr fit(const FitInput&) const override { return std::make_shared<ContrarianModel>(); }
};

}  // namespace

// ---- co-training ---------------------------------------------------------------

TEST(CoTrain, FormulaHandValues) {
  EXPECT_NEAR(cotrain_q_b(100, 5), 64.0, 1e-9);
  const double w_k = cotrain_w_k(0.9, 10);
  EXPECT_NEAR(w_k, 1.0, 1e-12);
  EXPECT_NEAR(cotrain_q_k(100, 10, 5, w_k), 110.0 * std::pow(1.0 - 12.0 / 110.0, 2), 1e-9);
  EXPECT_NEAR(cotrain_q_k(100, 10, 5, w_k), 87.309, 1e-3);
}

TEST(CoTrain, CombinedPosterior) {
  auto avg = [](std::vector<double> a, std::vector<double> b) {
    const FixedModel ma(a), mb(b);
    return cotrain_predict_proba(ma, mb, std::span<const double>{});
  };
  EXPECT_EQ(avg({0.6, 0.4}, {0.6, 0.4}), (std::vector<double>{0.6, 0.4}));
  EXPECT_EQ(avg({1.0, 0.0}, {0.0, 1.0}), (std::vector<double>{0.5, 0.5}));
  const auto p = avg({0.8, 0.2}, {0.6, 0.4});
  EXPECT_NEAR(p[0], 0.7, 1e-12);
  EXPECT_NEAR(p[1], 0.3, 1e-12);
}

TEST(CoTrain, IntervalsAreOrdered) {
  for (double n : {1.0, 5.0, 50.0})
    for (double k = 0; k <= n; k += 1.0)
      for (double c : {0.8, 0.95, 0.999}) {
        const auto iv = binomial_interval(k, n, c);
        EXPECT_LE(0.0, iv.lo);
        EXPECT_LE(iv.lo, iv.hi);
        EXPECT_LE(iv.hi, 1.0);
      }
}

TEST(CoTrain, EmptyUnlabeledIsSupervised) {
  const auto d = fixtures::nominal_classes(120, 4, 0.8, 1);
  CoTrainConfig cfg;
  cfg.learner_a = nb();
  cfg.learner_b = std::make_shared<TreeLearner>();
  const LabeledSplit all{iota_index(d.n_rows()), {}};
  const auto res = cotrain_fit(d, all, cfg);
  EXPECT_EQ(res.rounds(), 0);
  const auto sup = NaiveBayesLearner().fit(TrainingSet::labeled(d, all.labeled).view(d));
  for (Index i = 0; i < d.n_rows(); ++i)
    EXPECT_EQ(res.model_a->predict_proba(d.row(i)), sup->predict_proba(d.row(i)));
}

TEST(CoTrain, TerminatesAndKeepsPoolsDisjoint) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto d = fixtures::nominal_classes(150 + 10 * seed, 5, 0.6 + 0.04 * seed, seed);
    const auto split = every_kth_labeled(d.n_rows(), 3 + seed % 3);
    CoTrainConfig cfg;
    cfg.learner_a = nb();
    cfg.learner_b = std::make_shared<TreeLearner>();
    cfg.seed = seed;
    cfg.confidence = seed % 2 ? 0.9 : 0.99;
    const auto res = cotrain_fit(d, split, cfg);
    EXPECT_LE(static_cast<Index>(res.rounds()), split.unlabeled.size());
    std::set<Index> remaining(res.remaining.begin(), res.remaining.end());
    std::set<Index> labeled(split.labeled.begin(), split.labeled.end());
    Index added = 0;
    for (const auto* pool : {&res.pool_a, &res.pool_b})
      for (Index r : pool->rows) {
        EXPECT_EQ(remaining.count(r), 0u);
        added += labeled.count(r) == 0;
      }
    Index per_round = 0;
    for (Index c : res.labeled_per_round) per_round += c;
    EXPECT_EQ(added, per_round);
    EXPECT_EQ(per_round + res.remaining.size(), split.unlabeled.size());
  }
}

// ---- ASSEMBLE --------------------------------------------------------------------

TEST(Assemble, EmptyUnlabeledMatchesAdaBoostOracle) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto d = fixtures::nominal_classes(200, 5, 0.65, 40 + seed);
    AssembleConfig cfg;
    cfg.alpha = 1.0;
    cfg.base = nb();
    cfg.T = 10;
    cfg.seed = seed;
    const LabeledSplit all{iota_index(d.n_rows()), {}};
    const auto res = assemble_fit(d, all, cfg);
    const auto ref = oracle::adaboost(d, all.labeled, NaiveBayesLearner(), cfg.T, seed);
    ASSERT_EQ(res.model->members().size(), ref.members.size());
    for (Index m = 0; m < ref.weights.size(); ++m) EXPECT_NEAR(res.model->weights()[m], ref.weights[m], 1e-12);
    for (Index i = 0; i < d.n_rows(); ++i) {
      const auto p = res.model->predict_proba(d.row(i)), q = ref.predict_proba(d.row(i));
      EXPECT_NEAR(p[1], q[1], 1e-12);
    }
  }
}

TEST(Assemble, MajorityClassInitialization) {
  const auto d = fixtures::nominal_classes(100, 3, 0.8, 2);
  const auto split = every_kth_labeled(d.n_rows(), 4);
  AssembleConfig cfg;
  cfg.init = AssembleInit::kMajorityClass;
  cfg.base = nb();
  cfg.T = 3;
  const auto res = assemble_fit(d, split, cfg);
  const int maj = majority_class(d, split.labeled);
  for (int y : res.initial_pseudo) EXPECT_EQ(y, maj);
  EXPECT_EQ(res.initial_pseudo.size(), split.unlabeled.size());
}

TEST(Assemble, DistributionsStayNormalized) {
  const auto d = fixtures::nominal_classes(160, 4, 0.7, 3);
  const auto split = every_kth_labeled(d.n_rows(), 5);
  AssembleConfig cfg;
  cfg.base = nb();
  cfg.T = 8;
  cfg.alpha = 0.7;
  const auto res = assemble_fit(d, split, cfg);
  for (const auto& D : res.distributions) {
    double s = 0.0;
    for (double x : D) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  EXPECT_NEAR(res.distributions[0][0] * split.labeled.size(), cfg.beta, 1e-12);
}

TEST(Assemble, HopelessFirstRoundKeepsOneModel) {
  const auto d = fixtures::nominal_classes(50, 2, 1.0, 4);
  AssembleConfig cfg;
  cfg.base = std::make_shared<ContrarianLearner>();
  const auto res = assemble_fit(d, every_kth_labeled(d.n_rows(), 2), cfg);
  EXPECT_EQ(res.model->members().size(), 1u);
  EXPECT_GE(res.errors.front(), 0.5);
}

TEST(Assemble, PerfectRoundUsesCappedStep) {
  const auto d = fixtures::nominal_classes(60, 1, 1.0, 5);
  AssembleConfig cfg;
  cfg.base = nb();
  cfg.T = 2;
  const auto res = assemble_fit(d, LabeledSplit{iota_index(d.n_rows()), {}}, cfg);
  EXPECT_DOUBLE_EQ(res.model->weights().front(), kAssembleMaxStep);
  EXPECT_NEAR(kAssembleMaxStep, 0.5 * std::log(1e6), 1e-12);
}

// ---- re-weighting -----------------------------------------------------------------

TEST(Reweight, WorkedGroup) {
  const auto g = extrapolate_group({10, 90}, 20);
  EXPECT_DOUBLE_EQ(g.weight, 1.2);
  EXPECT_EQ(g.quotas, (std::vector<Index>{2, 18}));
}

TEST(Reweight, EmptyUnlabeledAddsNothing) {
  const auto g = extrapolate_group({10, 90}, 0);
  EXPECT_DOUBLE_EQ(g.weight, 1.0);
  EXPECT_EQ(g.quotas, (std::vector<Index>{0, 0}));
}

TEST(Reweight, LargestRemainderRounding) {
  // Weight 1.15: real quotas 1.5 and 13.5, equal remainders, lower class first.
  const auto g = extrapolate_group({10, 90}, 15);
  EXPECT_DOUBLE_EQ(g.weight, 1.15);
  EXPECT_EQ(g.quotas, (std::vector<Index>{2, 13}));
  const auto h = extrapolate_group({3, 3, 1}, 5);
  Index total = 0;
  for (Index q : h.quotas) total += q;
  EXPECT_EQ(total, 5u);
  EXPECT_THROW(extrapolate_group({0, 0}, 4), Error);
}

TEST(Reweight, ExpandLabelsWithinBands) {
  const auto d = fixtures::nominal_classes(600, 4, 0.75, 6);
  const auto split = every_kth_labeled(d.n_rows(), 6);
  const auto res = reweight_expand(d, split, NaiveBayesLearner(), 10, 1);
  EXPECT_LE(res.added_rows.size(), split.unlabeled.size());
  std::set<Index> unl(split.unlabeled.begin(), split.unlabeled.end());
  std::set<Index> seen;
  for (Index r : res.added_rows) {
    EXPECT_EQ(unl.count(r), 1u);
    EXPECT_TRUE(seen.insert(r).second);
  }
  for (Index k = 1; k < res.edges.size(); ++k) EXPECT_LE(res.edges[k - 1], res.edges[k]);
  EXPECT_EQ(res.expanded.rows.size(), split.labeled.size() + res.added_rows.size());
}

// ---- sample selection ---------------------------------------------------------------

TEST(SampleSelect, McarSelectionIsUninformative) {
  const auto d = fixtures::gaussian_classes(4000, 3, 1.0, 7);
  const auto split = synth::split_mcar(d, 0.5, 3);
  const DiscretizingLearner base(nb());
  const auto res = sample_select_fit(d, split, base);
  std::vector<double> s(d.n_rows());
  std::vector<int> y(d.n_rows(), 0);
  for (Index i : split.labeled) y[i] = 1;
  for (Index i = 0; i < d.n_rows(); ++i) s[i] = res.model->selection_score(d.row(i));
  EXPECT_LT(std::fabs(eval::auc_normalized(s, y)), 0.1);
  EXPECT_EQ(res.augmented.n_features(), d.n_features() + 1);
}

TEST(SampleSelect, EmptyUnlabeledIsError) {
  const auto d = fixtures::gaussian_classes(100, 2, 1.0, 8);
  const DiscretizingLearner base(nb());
  EXPECT_THROW(sample_select_fit(d, LabeledSplit{iota_index(100), {}}, base), Error);
}

// ---- CC mixture ---------------------------------------------------------------------

namespace {

CCMixtureModel two_component_1d() {
  CCMixtureModel::Component a{{0.0}, {1.0}, {}, {1.0, 0.0}}, b{{1.0}, {1.0}, {}, {0.0, 1.0}};
  return CCMixtureModel({FeatureKind::continuous()}, 2, {0.5, 0.5}, {a, b});
}

}  // namespace

TEST(CCMixture, SymmetricHandInstance) {
  const auto m = two_component_1d();
  const Dataset d("one", {FeatureKind::continuous()}, {0.5}, {kMissingLabel}, 2);
  const auto r = cc_e_step(m, d, LabeledSplit{{}, {0}});
  EXPECT_NEAR(r.at(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(r.at(0, 1), 0.5, 1e-15);
  const std::vector<double> x{0.5};
  const auto p = m.predict_proba(x);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-15);
}

TEST(CCMixture, SingleComponent) {
  const auto d = fixtures::gaussian_classes(50, 2, 1.0, 9);
  const auto split = every_kth_labeled(d.n_rows(), 2);
  const auto hidden = hide_unlabeled(d, split);
  const auto fit = cc_fit(hidden, split, {1, 20, 1e-9, 0});
  const auto r = cc_e_step(fit.model, hidden, split);
  for (Index i = 0; i < d.n_rows(); ++i) EXPECT_DOUBLE_EQ(r.at(i, 0), 1.0);
  for (Index i = 0; i < d.n_rows(); ++i) EXPECT_EQ(fit.model.predict_proba(d.row(i)), fit.model.components()[0].beta);
}

TEST(CCMixture, SingleClassGivesIndicatorBeta) {
  const auto d = fixtures::gaussian_classes(40, 1, 0.0, 10).with_labels(std::vector<int>(40, 1));
  const auto fit = cc_fit(d, LabeledSplit{iota_index(40), {}}, {1, 5, 1e-9, 0});
  EXPECT_EQ(fit.model.components()[0].beta, (std::vector<double>{0.0, 1.0}));
}

TEST(CCMixture, HardResponsibilitiesGiveMeans) {
  const auto d = fixtures::gaussian_classes(30, 2, 0.0, 11);
  Responsibilities r{30, 2, std::vector<double>(60, 0.0), 0.0};
  double sum0 = 0, sum1 = 0;
  int n0 = 0, n1 = 0;
  for (Index i = 0; i < 30; ++i) {
    const int j = i % 3 == 0 ? 0 : 1;
    r.r[i * 2 + j] = 1.0;
    (j == 0 ? sum0 : sum1) += d.at(i, 0);
    (j == 0 ? n0 : n1) += 1;
  }
  const auto m = cc_m_step(r, d, LabeledSplit{iota_index(30), {}});
  EXPECT_NEAR(m.components()[0].mean[0], sum0 / n0, 1e-12);
  EXPECT_NEAR(m.components()[1].mean[0], sum1 / n1, 1e-12);
  for (const auto& c : m.components())
    for (double v : c.var) EXPECT_GE(v, kCCVarianceFloor);
}

TEST(CCMixture, BetaUsesLabeledRowsOnly) {
  const auto d = fixtures::gaussian_classes(60, 1, 2.0, 12);
  const auto split = every_kth_labeled(60, 3);
  const auto hidden = hide_unlabeled(d, split);
  const auto model = cc_initial_model(hidden, split, 3, 4);
  const auto r = cc_e_step(model, hidden, split);
  const auto full = cc_m_step(r, hidden, split);

  // Same labeled rows and responsibilities, unlabeled rows removed.
  const auto only = hidden.subset(split.labeled);
  Responsibilities rl{split.labeled.size(), 3, {}, 0.0};
  for (Index i : split.labeled)
    for (int j = 0; j < 3; ++j) rl.r.push_back(r.at(i, j));
  const auto reduced = cc_m_step(rl, only, LabeledSplit{iota_index(only.n_rows()), {}});
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 2; ++k)
      EXPECT_NEAR(full.components()[j].beta[k], reduced.components()[j].beta[k], 1e-12);
}

TEST(CCMixture, RecoversSeparatedClusters) {
  Rng rng(13);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v;
  std::vector<int> y;
  for (int i = 0; i < 2000; ++i) {
    const int c = i % 2;
    v.push_back(z(rng) + (c ? 5.0 : -5.0));
    y.push_back(c);
  }
  const Dataset d("clusters", {FeatureKind::continuous()}, v, y, 2);
  const auto split = every_kth_labeled(2000, 10);
  const auto fit = cc_fit(hide_unlabeled(d, split), split, {2, 200, 1e-9, 1});
  std::vector<double> means{fit.model.components()[0].mean[0], fit.model.components()[1].mean[0]};
  std::sort(means.begin(), means.end());
  EXPECT_NEAR(means[0], -5.0, 0.2);
  EXPECT_NEAR(means[1], 5.0, 0.2);
}

TEST(CCMixture, ObjectiveNeverDecreases) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = fixtures::gaussian_classes(300, 3, 1.0, 50 + seed);
    const auto split = synth::split_mcar(d, 0.2, seed);
    const auto fit = cc_fit(hide_unlabeled(d, split), split, {4, 100, 1e-10, seed});
    for (Index t = 1; t < fit.trace.size(); ++t) EXPECT_GE(fit.trace[t], fit.trace[t - 1] - 1e-8);
  }
}

TEST(CCMixture, MixedFeaturesAndErrors) {
  const auto nom = fixtures::nominal_classes(200, 2, 0.8, 14);
  const auto mixed = nom.append_continuous(fixtures::gaussian_classes(200, 1, 0.0, 15).column(0), "z");
  const auto split = every_kth_labeled(200, 4);
  const auto fit = cc_fit(hide_unlabeled(mixed, split), split, {3, 50, 1e-9, 2});
  for (const auto& c : fit.model.components())
    for (const auto& t : c.table) {
      double s = 0.0;
      for (double v : t) s += v;
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
  double pi = 0.0;
  for (double p : fit.model.pi()) pi += p;
  EXPECT_NEAR(pi, 1.0, 1e-9);
  EXPECT_THROW(cc_fit(mixed.subset(std::vector<Index>{0, 1}), LabeledSplit{{0, 1}, {}}, {6, 10, 1e-6, 0}), Error);
}
