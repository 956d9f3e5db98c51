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

#include "oracles.hpp"
#include "test_util.hpp"

using namespace sslbench;
using namespace sslbench::eval;

TEST(Auc, HandValues) {
  const std::vector<double> s{0.9, 0.8, 0.7, 0.6};
  EXPECT_DOUBLE_EQ(auc_raw(s, std::vector<int>{1, 0, 1, 0}), 0.75);
  EXPECT_DOUBLE_EQ(auc_normalized(s, std::vector<int>{1, 0, 1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(auc_normalized(s, std::vector<int>{1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(auc_normalized(s, std::vector<int>{0, 0, 1, 1}), -1.0);
  EXPECT_THROW(auc_raw(s, std::vector<int>{1, 1, 1, 1}), Error);
}

TEST(Auc, MatchesPairwiseOracleWithTies) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const Index n = 2 + rng() % 11;
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (Index i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 5);
      y[i] = static_cast<int>(rng() % 2);
    }
    y[0] = 1, y[1] = 0;
    EXPECT_NEAR(auc_raw(s, y), oracle::auc_pairwise(s, y), 1e-12);
  }
}

TEST(Auc, CurveIsMonotoneWithExactEndpoints) {
  const auto d = fixtures::gaussian_classes(300, 1, 0.7, 2);
  const auto s = d.column(0);
  const auto curve = roc_curve(s, fixtures::test_labels(d));
  EXPECT_EQ(curve.front().fpr, 0.0);
  EXPECT_EQ(curve.front().tpr, 0.0);
  EXPECT_EQ(curve.back().fpr, 1.0);
  EXPECT_EQ(curve.back().tpr, 1.0);
  for (Index k = 1; k < curve.size(); ++k) {
    EXPECT_GE(curve[k].fpr, curve[k - 1].fpr);
    EXPECT_GE(curve[k].tpr, curve[k - 1].tpr);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  const auto d = fixtures::gaussian_classes(500, 1, 0.5, 3);
  auto s = d.column(0);
  const auto y = fixtures::test_labels(d);
  const double a = auc_normalized(s, y);
  for (double& x : s) x = std::exp(3.0 * x) + 7.0;
  EXPECT_NEAR(auc_normalized(s, y), a, 1e-15);
}

TEST(Ks, HandValues) {
  const std::vector<double> a{1, 2, 3}, b{2, 3, 4}, c{10, 11};
  EXPECT_NEAR(ks_two_sample(a, b).statistic, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(ks_two_sample(a, a).statistic, 0.0);
  EXPECT_EQ(ks_two_sample(a, a).p_value, 1.0);
  EXPECT_EQ(ks_two_sample(a, c).statistic, 1.0);
}

TEST(Ks, MatchesOracle) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(1 + rng() % 12), b(1 + rng() % 12);
    for (double& x : a) x = static_cast<double>(rng() % 8);
    for (double& x : b) x = static_cast<double>(rng() % 8) + 0.5 * (t % 2);
    EXPECT_NEAR(ks_two_sample(a, b).statistic, oracle::ks_statistic(a, b), 1e-12);
  }
}

TEST(Ks, PValueAgainstReference) {
  // Asymptotic Kolmogorov tail at lambda = 1: 0.2699996716735...
  EXPECT_NEAR(kolmogorov_sf(1.0), 0.26999967167735, 1e-10);
  EXPECT_NEAR(kolmogorov_sf(0.5), 0.96394524366487, 1e-10);
  EXPECT_NEAR(kolmogorov_sf(0.29), 0.9999963201361132, 1e-10);
  EXPECT_NEAR(kolmogorov_sf(0.31), 0.9999785020570597, 1e-10);
  double prev = 1.0;
  for (double l = 0.05; l < 3.0; l += 0.05) {
    EXPECT_LE(kolmogorov_sf(l), prev + 1e-15);
    prev = kolmogorov_sf(l);
  }
}

TEST(Chi2, HandValues) {
  const auto r = chi2_test({{10, 20}, {20, 10}});
  EXPECT_NEAR(r.statistic, 20.0 / 3.0, 1e-3);
  EXPECT_TRUE(r.reject_at_05);
  EXPECT_NEAR(chi2_test({{10, 20}, {20, 40}}).statistic, 0.0, 1e-12);
  const auto single = chi2_test({{5, 7, 9}});
  EXPECT_EQ(single.statistic, 0.0);
  EXPECT_EQ(single.p_value, 1.0);
  EXPECT_NEAR(chi2_sf(3.841458820694124, 1.0), 0.05, 1e-12);
}

TEST(KruskalWallis, MatchesOracle) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> g(2 + rng() % 3);
    for (auto& grp : g) {
      grp.resize(1 + rng() % 6);
      for (double& x : grp) x = static_cast<double>(rng() % 9);
    }
    EXPECT_NEAR(kruskal_wallis(g).statistic, oracle::kruskal_h(g), 1e-10);
  }
}

TEST(KruskalWallis, DegenerateAndInvariant) {
  const auto same = kruskal_wallis({{1, 2, 3}, {1, 2, 3}});
  EXPECT_NEAR(same.statistic, 0.0, 1e-12);
  const auto flat = kruskal_wallis({{4, 4}, {4, 4, 4}});
  EXPECT_EQ(flat.statistic, 0.0);
  EXPECT_EQ(flat.p_value, 1.0);
  std::vector<std::vector<double>> g{{0.1, 0.5, 0.3}, {0.9, 0.7}, {0.2, 0.4, 0.8}};
  const double h = kruskal_wallis(g).statistic;
  for (auto& grp : g)
    for (double& x : grp) x = std::log(x) * 5.0;
  EXPECT_NEAR(kruskal_wallis(g).statistic, h, 1e-12);
}

TEST(KruskalWallis, GrowsWithSeparation) {
  double prev = -1.0;
  for (double shift : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    std::vector<double> a, b;
    for (int i = 0; i < 10; ++i) {
      a.push_back(i * 0.7);
      b.push_back(i * 0.7 + shift);
    }
    const double h = kruskal_wallis({a, b}).statistic;
    EXPECT_GE(h, prev);
    prev = h;
  }
}

TEST(WinTieLoss, AllTiesForIdenticalRuns) {
  RunTable t;
  for (int d = 0; d < 3; ++d) {
    t["d" + std::to_string(d)]["base"] = {0.1, 0.2, 0.3, 0.4};
    t["d" + std::to_string(d)]["other"] = {0.1, 0.2, 0.3, 0.4};
  }
  const auto w = wtl_tally(t, "base");
  EXPECT_EQ(w.at("other"), (WinTieLoss{0, 3, 0}));
}

TEST(WinTieLoss, CompleteSeparationIsWin) {
  RunTable t;
  for (int d = 0; d < 10; ++d)
    for (int r = 0; r < 10; ++r) {
      const double b = 0.1 + 0.01 * r + 0.001 * d;
      t["d" + std::to_string(d)]["base"].push_back(b);
      t["d" + std::to_string(d)]["better"].push_back(b + 0.3);
    }
  EXPECT_EQ(wtl_tally(t, "base").at("better").str(), "10-0-0");
}

TEST(WinTieLoss, FailedRunsRankAsZero) {
  RunTable t;
  const double nan = std::nan("");
  t["d"]["base"] = {0.5, 0.6, 0.55, 0.52, 0.58, 0.61, 0.57, 0.54};
  t["d"]["broken"] = {nan, nan, nan, nan, nan, nan, nan, nan};
  EXPECT_EQ(wtl_tally(t, "base").at("broken").str(), "0-0-1");
}

TEST(Bias, ShiftedFeatureIsDetected) {
  const auto d = fixtures::gaussian_classes(2000, 3, 0.0, 6);
  LabeledSplit split;
  for (Index i = 0; i < d.n_rows(); ++i) (d.at(i, 0) > 0.3 ? split.unlabeled : split.labeled).push_back(i);
  const auto rep = bias_report(d, split);
  EXPECT_EQ(rep.tested(), 3);
  EXPECT_TRUE(rep.features[0].test.reject_at_05);
  EXPECT_GE(rep.different(), 1);
  EXPECT_NE(rep.summary().find("out of 3 different"), std::string::npos);
}

TEST(Bias, NominalUsesChiSquared) {
  const auto d = fixtures::nominal_classes(1000, 2, 0.9, 7);
  LabeledSplit split;
  for (Index i = 0; i < d.n_rows(); ++i) (d.label(i) == 1 ? split.labeled : split.unlabeled).push_back(i);
  const auto rep = bias_report(d, split);
  EXPECT_FALSE(rep.features[0].continuous);
  EXPECT_EQ(rep.different(), 2);
}
