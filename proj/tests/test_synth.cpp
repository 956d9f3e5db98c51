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

#include "test_util.hpp"

using namespace sslbench;
using namespace sslbench::synth;

namespace {

double positive_rate(const Dataset& d, const std::vector<Index>& rows) {
  double pos = 0.0;
  for (Index i : rows) pos += d.label(i) == 1;
  return pos / static_cast<double>(rows.size());
}

SynthSpec spec_of(const std::string& name, std::uint64_t seed, Index n_train = 8000, Index n_test = 4000) {
  auto s = parse_synth_name(name);
  s.seed = seed;
  s.n_train = n_train;
  s.n_test = n_test;
  return s;
}

}  // namespace

TEST(SynthName, ParseAndFormat) {
  const auto s = parse_synth_name("30_80_10_05");
  EXPECT_DOUBLE_EQ(s.pct_independent, 30);
  EXPECT_DOUBLE_EQ(s.pct_relevant, 80);
  EXPECT_DOUBLE_EQ(s.pct_noise, 10);
  EXPECT_DOUBLE_EQ(s.pct_minority, 5);
  EXPECT_EQ(s.name(), "30_80_10_05");
  EXPECT_EQ(s.n_independent(), 9);
  EXPECT_EQ(s.n_relevant(), 7);
  EXPECT_THROW(parse_synth_name("30_80_10"), Error);
  EXPECT_THROW(parse_synth_name("30_80_x_05"), Error);
  EXPECT_THROW(spec_of("30_80_10_50", 1).validate(), Error);
  EXPECT_THROW(spec_of("30_180_10_05", 1).validate(), Error);
}

TEST(SynthName, AtLeastOneRelevant) {
  auto s = parse_synth_name("10_00_00_05");
  EXPECT_EQ(s.n_relevant(), 1);
}

TEST(Generate, ShapeAndClassBalance) {
  const auto g = generate_artificial(spec_of("30_30_00_05", 3));
  EXPECT_EQ(g.train.n_features(), 30u);
  EXPECT_EQ(g.train.n_rows(), 8000u);
  EXPECT_EQ(g.test.n_rows(), 4000u);
  const double rate = positive_rate(g.train, iota_index(g.train.n_rows()));
  EXPECT_NEAR(rate, 0.05, 0.005);
}

TEST(Generate, Deterministic) {
  const auto a = generate_artificial(spec_of("30_80_10_05", 9, 500, 200));
  const auto b = generate_artificial(spec_of("30_80_10_05", 9, 500, 200));
  EXPECT_EQ(a.train.values(), b.train.values());
  EXPECT_EQ(a.train.labels(), b.train.labels());
  EXPECT_EQ(a.test.values(), b.test.values());
  const auto c = generate_artificial(spec_of("30_80_10_05", 10, 500, 200));
  EXPECT_NE(a.train.values(), c.train.values());
}

TEST(Generate, NoiseFlipsExactCount) {
  const auto clean = generate_artificial(spec_of("30_80_00_05", 4, 2000, 1000));
  const auto noisy = generate_artificial(spec_of("30_80_20_05", 4, 2000, 1000));
  EXPECT_EQ(clean.train.values(), noisy.train.values());
  int diff = 0;
  for (Index i = 0; i < clean.train.n_rows(); ++i) diff += clean.train.label(i) != noisy.train.label(i);
  EXPECT_EQ(diff, 400);
}

TEST(Generate, CleanLabelsFollowRelevantFeatures) {
  const auto g = generate_artificial(spec_of("30_80_00_10", 6, 2000, 500));
  EXPECT_EQ(g.relevant.size(), 7u);
  for (Index i = 0; i < g.train.n_rows(); ++i) ASSERT_EQ(g.clean_label(g.train.row(i)), g.train.label(i));
}

TEST(Heckman, IndependentSelectionHalfLabeled) {
  HeckmanSpec s;
  s.beta = {1.0, -0.5, 0.3, 0.0};
  s.gamma = {0.0, 0.0, 0.0, 0.0};
  s.rho = 0.0;
  s.seed = 12;
  const auto h = generate_heckman(s);
  EXPECT_NEAR(static_cast<double>(h.split.labeled.size()) / 10000.0, 0.5, 0.02);
  EXPECT_LT(std::fabs(positive_rate(h.data, h.split.labeled) - positive_rate(h.data, h.split.unlabeled)), 0.02);
}

TEST(Heckman, CorrelatedSelectionOversamplesPositives) {
  HeckmanSpec s;
  s.beta = {1.0, -0.5, 0.3, 0.0};
  s.gamma = {0.5, 0.0, 0.2, 0.0};
  s.rho = 0.8;
  s.seed = 13;
  const auto h = generate_heckman(s);
  EXPECT_GT(positive_rate(h.data, h.split.labeled) - positive_rate(h.data, h.split.unlabeled), 0.05);
  EXPECT_THROW(([] {
                 HeckmanSpec bad;
                 bad.beta = {1.0};
                 bad.gamma = {1.0};
                 return generate_heckman(bad);
               }()),
               Error);
}

TEST(Missingness, McarSizes) {
  const auto d = fixtures::gaussian_classes(8000, 2, 1.0, 1);
  const auto s = split_mcar(d, 0.01, 5);
  EXPECT_EQ(s.labeled.size(), 80u);
  EXPECT_EQ(s.unlabeled.size(), 7920u);
  s.check(d);
  const auto all = split_mcar(d, 1.0, 5);
  EXPECT_TRUE(all.unlabeled.empty());
  const auto again = split_mcar(d, 0.01, 5);
  EXPECT_EQ(again.labeled, s.labeled);
}

TEST(Missingness, ThresholdsBelowMinLabelEverything) {
  const auto d = fixtures::gaussian_classes(100, 2, 0.0, 2);
  const auto s = split_by_thresholds(d, 0, 1, -1e9, -1e9);
  EXPECT_EQ(s.labeled.size(), 100u);
}

TEST(Missingness, MarHitsTarget) {
  const auto g = generate_artificial(spec_of("30_80_00_05", 21));
  const auto mar = split_mar(g.train, 0, 1, 0.745);
  EXPECT_NEAR(static_cast<double>(mar.split.unlabeled.size()), 5967.0, 59.67);
  // Unlabeled rows satisfy the censoring predicate; labeled rows violate it.
  for (Index i : mar.split.unlabeled) EXPECT_TRUE(g.train.at(i, 0) <= mar.c_i || g.train.at(i, 1) <= mar.c_j);
  for (Index i : mar.split.labeled) {
    EXPECT_GT(g.train.at(i, 0), mar.c_i);
    EXPECT_GT(g.train.at(i, 1), mar.c_j);
  }
}

TEST(Missingness, MnarOversamplesPositives) {
  const auto d = fixtures::gaussian_classes(10000, 2, 1.0, 3);
  const auto s = split_mnar(d, 0.3, 0.8, 4);
  EXPECT_EQ(s.labeled.size(), 3000u);
  EXPECT_GT(positive_rate(d, s.labeled), positive_rate(d, s.unlabeled) + 0.1);
}

TEST(Missingness, LabelNoise) {
  const auto d = fixtures::gaussian_classes(8000, 1, 1.0, 5);
  EXPECT_EQ(inject_label_noise(d, 0.0, 1).labels(), d.labels());
  const auto all = inject_label_noise(d, 1.0, 1);
  for (Index i = 0; i < d.n_rows(); ++i) EXPECT_EQ(all.label(i), 1 - d.label(i));
  const auto some = inject_label_noise(d, 0.05, 1);
  int diff = 0;
  for (Index i = 0; i < d.n_rows(); ++i) diff += some.label(i) != d.label(i);
  EXPECT_EQ(diff, 400);
}

TEST(Missingness, BinarizeTargetIsStrict) {
  const Dataset d("amounts", {FeatureKind::continuous(), FeatureKind::continuous()},
                  {0.1, 5.0, 0.2, 1.0, 0.3, 2.0, 0.4, std::nan("")}, {0, 0, 0, 0}, 2);
  const auto b = binarize_target(d, 1, 2.0);
  EXPECT_EQ(b.n_features(), 1u);
  EXPECT_EQ(b.label(0), 1);
  EXPECT_EQ(b.label(1), 0);
  EXPECT_EQ(b.label(2), 0);
  EXPECT_FALSE(b.has_label(3));
}
