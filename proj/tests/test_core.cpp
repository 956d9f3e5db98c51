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
#include <map>
#include <sstream>

#include "test_util.hpp"

using namespace sslbench;

namespace {

Dataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_table(in, "t");
}

}  // namespace

TEST(TableIo, ParsesHeaderKinds) {
  const auto d = parse("a:num,b:cat,y:class\n1.5,x,0\n2.5,y,1\n3.5,x,1\n");
  EXPECT_EQ(d.n_features(), 2u);
  EXPECT_EQ(d.n_rows(), 3u);
  EXPECT_TRUE(d.kind(0).is_continuous());
  EXPECT_TRUE(d.kind(1).is_nominal());
  EXPECT_EQ(d.label(1), 1);
  EXPECT_DOUBLE_EQ(d.at(2, 0), 3.5);
  EXPECT_EQ(d.at(0, 1), d.at(2, 1));
}

TEST(TableIo, MissingClassKeepsRow) {
  const auto d = parse("a:num,y:class\n1,0\n2,?\n3,1\n");
  EXPECT_EQ(d.n_rows(), 3u);
  EXPECT_FALSE(d.has_label(1));
  EXPECT_TRUE(d.has_label(2));
}

TEST(TableIo, RowWidthError) {
  try {
    parse("a:num,b:num,y:class\n1,0\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("row width"), std::string::npos);
  }
}

TEST(TableIo, RoundTrip) {
  const auto d = fixtures::gaussian_classes(50, 3, 1.0, 7);
  std::stringstream buf;
  write_table(buf, d);
  const auto back = parse_table(buf, "t");
  ASSERT_EQ(back.n_rows(), d.n_rows());
  EXPECT_EQ(back.labels(), d.labels());
  for (Index i = 0; i < d.values().size(); ++i) EXPECT_DOUBLE_EQ(back.values()[i], d.values()[i]);
}

TEST(Dataset, InvariantsAreChecked) {
  EXPECT_THROW(Dataset("x", {FeatureKind::nominal(2)}, {2.0}, {0}, 2), Error);
  EXPECT_THROW(Dataset("x", {FeatureKind::continuous()}, {1.0}, {3}, 2), Error);
  EXPECT_THROW(Dataset("x", {FeatureKind::continuous()}, {1.0, 2.0}, {0}, 2), Error);
}

TEST(LabeledSplit, CheckRejectsOverlapAndGaps) {
  const auto d = fixtures::gaussian_classes(4, 1, 0.0, 1);
  EXPECT_NO_THROW((LabeledSplit{{0, 1}, {2, 3}}.check(d)));
  EXPECT_THROW((LabeledSplit{{0, 1}, {1, 2, 3}}.check(d)), Error);
  EXPECT_THROW((LabeledSplit{{0, 1}, {2}}.check(d)), Error);
}

TEST(Discretize, SingleBoundaryAtMidpoint) {
  const std::vector<double> v{1, 2, 3, 10, 11, 12};
  const std::vector<int> c{0, 0, 0, 1, 1, 1};
  const auto cuts = mdl_cuts(v, c, 2);
  ASSERT_EQ(cuts.size(), 1u);
  EXPECT_DOUBLE_EQ(cuts[0], 6.5);
}

TEST(Discretize, DegenerateInputsGiveNoCuts) {
  EXPECT_TRUE(mdl_cuts(std::vector<double>{1, 2, 3, 4}, std::vector<int>{1, 1, 1, 1}, 2).empty());
  EXPECT_TRUE(mdl_cuts(std::vector<double>{5, 5, 5, 5}, std::vector<int>{0, 1, 0, 1}, 2).empty());
}

TEST(Discretize, BinBoundaryConvention) {
  EXPECT_EQ(bin_of(5.0, {6.5}), 0);
  EXPECT_EQ(bin_of(6.5, {6.5}), 1);
  EXPECT_EQ(bin_of(-100.0, {}), 0);
  EXPECT_EQ(bin_of(100.0, {}), 0);
}

TEST(Discretize, NoContinuousFeaturesGivesEmptyMap) {
  const auto d = fixtures::nominal_classes(20, 3, 0.8, 2);
  const auto map = discretize_mdl(d, iota_index(d.n_rows()));
  EXPECT_TRUE(map.features.empty());
}

// Independent oracle for the top-level decision: exhaustive search over
// boundary midpoints for the minimum class-information entropy, then the
// MDL acceptance test.
namespace {

double ent(const std::vector<double>& counts) {
  double n = 0.0, h = 0.0;
  for (double c : counts) n += c;
  for (double c : counts)
    if (c > 0) h -= c / n * std::log2(c / n);
  return h;
}

std::optional<double> oracle_first_cut(const std::vector<double>& v, const std::vector<int>& c, int K) {
  std::vector<std::pair<double, int>> s;
  for (Index i = 0; i < v.size(); ++i) s.push_back({v[i], c[i]});
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  std::vector<double> all(K, 0.0);
  for (auto& p : s) all[p.second] += 1;
  double best = 1e300, best_cut = 0;
  std::vector<double> bl, br;
  for (Index i = 1; i < s.size(); ++i) {
    if (s[i].first == s[i - 1].first) continue;
    std::vector<double> l(K, 0.0), r(K, 0.0);
    for (Index a = 0; a < i; ++a) l[s[a].second] += 1;
    for (Index a = i; a < s.size(); ++a) r[s[a].second] += 1;
    const double e = (i / n) * ent(l) + ((n - i) / n) * ent(r);
    if (e < best - 1e-12) {
      best = e;
      best_cut = 0.5 * (s[i - 1].first + s[i].first);
      bl = l;
      br = r;
    }
  }
  if (bl.empty()) return std::nullopt;
  auto k_of = [](const std::vector<double>& x) { return static_cast<double>(std::count_if(x.begin(), x.end(), [](double y) { return y > 0; })); };
  const double gain = ent(all) - best;
  const double delta = std::log2(std::pow(3.0, k_of(all)) - 2.0) -
                       (k_of(all) * ent(all) - k_of(bl) * ent(bl) - k_of(br) * ent(br));
  if (gain > (std::log2(n - 1.0) + delta) / n) return best_cut;
  return std::nullopt;
}

}  // namespace

TEST(Discretize, TopLevelMatchesExhaustiveOracle) {
  Rng rng(11);
  std::normal_distribution<double> z(0.0, 1.0);
  int accepted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 10 + trial % 40;
    const double shift = (trial % 5) * 0.6;
    std::vector<double> v(n);
    std::vector<int> c(n);
    for (Index i = 0; i < n; ++i) {
      c[i] = static_cast<int>(rng() % 2);
      v[i] = std::round((z(rng) + shift * c[i]) * 4.0) / 4.0;
    }
    const auto cuts = mdl_cuts(v, c, 2);
    const auto expected = oracle_first_cut(v, c, 2);
    if (!expected) {
      EXPECT_TRUE(cuts.empty()) << "trial " << trial;
    } else {
      ++accepted;
      EXPECT_NE(std::find(cuts.begin(), cuts.end(), *expected), cuts.end()) << "trial " << trial;
    }
    for (Index k = 1; k < cuts.size(); ++k) EXPECT_LT(cuts[k - 1], cuts[k]);
  }
  EXPECT_GT(accepted, 20);
}

TEST(Discretize, ApplyCutsCoversContinuousOnly) {
  auto d = fixtures::gaussian_classes(400, 2, 2.0, 5);
  const auto mixed = d.append_continuous(d.column(0), "copy");
  const auto map = discretize_mdl(mixed, iota_index(mixed.n_rows()));
  EXPECT_EQ(map.features.size(), 3u);
  const auto binned = apply_cuts(mixed, map);
  EXPECT_TRUE(binned.all_nominal());
  for (Index f = 0; f < map.features.size(); ++f)
    EXPECT_EQ(binned.kind(map.features[f]).arity, std::max<int>(2, static_cast<int>(map.cuts[f].size()) + 1));
  EXPECT_THROW(apply_cuts(binned, map), Error);
}
