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

// Hypothesis tests used for label-bias diagnostics and for comparing
// techniques. All p-values are asymptotic.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "sslbench/common.hpp"

namespace sslbench::eval {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool reject_at_05 = false;

  static TestResult make(double statistic, double p) {
    p = std::clamp(p, 0.0, 1.0);
    return {statistic, p, p < 0.05};
  }
};

// Upper tail of the chi-squared distribution.
inline double chi2_sf(double x, double dof) {
  if (dof <= 0.0) return 1.0;
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Kolmogorov distribution tail Q(l) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 l^2).
inline double kolmogorov_sf(double lambda) {
  if (lambda < 1e-3) return 1.0;
  if (lambda < 0.3) {
    // Alternating series converges slowly here; use the dual (theta) form.
    const double pi = 3.14159265358979323846;
    double s = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double t = (2.0 * k - 1.0) * pi / lambda;
      s += std::exp(-t * t / 8.0);
    }
    return 1.0 - std::sqrt(2.0 * pi) / lambda * s;
  }
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Two-sample Kolmogorov-Smirnov: D = sup |F_a - F_b|.
inline TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  Index i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  return TestResult::make(d, kolmogorov_sf(en * d));
}

// Pearson chi-squared on an r x c table of counts. Empty rows and columns
// are dropped; what remains sets the degrees of freedom.
inline TestResult chi2_test(const std::vector<std::vector<double>>& table) {
  if (table.empty()) throw Error("chi2_test: empty table");
  const Index cols = table[0].size();
  for (const auto& r : table)
    if (r.size() != cols) throw Error("chi2_test: ragged table");
  std::vector<double> row_sum(table.size(), 0.0), col_sum(cols, 0.0);
  double total = 0.0;
  for (Index r = 0; r < table.size(); ++r)
    for (Index c = 0; c < cols; ++c) {
      if (table[r][c] < 0.0) throw Error("chi2_test: negative count");
      row_sum[r] += table[r][c];
      col_sum[c] += table[r][c];
      total += table[r][c];
    }
  if (!(total > 0.0)) throw Error("chi2_test: table total is zero");
  const auto live_rows = std::count_if(row_sum.begin(), row_sum.end(), [](double s) { return s > 0; });
  const auto live_cols = std::count_if(col_sum.begin(), col_sum.end(), [](double s) { return s > 0; });
  if (live_rows < 2 || live_cols < 2) return TestResult::make(0.0, 1.0);
  double stat = 0.0;
  for (Index r = 0; r < table.size(); ++r)
    for (Index c = 0; c < cols; ++c) {
      const double e = row_sum[r] * col_sum[c] / total;
      if (e <= 0.0) continue;
      const double diff = table[r][c] - e;
      stat += diff * diff / e;
    }
  const double dof = static_cast<double>((live_rows - 1) * (live_cols - 1));
  return TestResult::make(stat, chi2_sf(stat, dof));
}

// Midranks (1-based) of the pooled values; ties share their average rank.
inline std::vector<double> midranks(std::span<const double> values) {
  std::vector<Index> order(values.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (Index k = 0; k < order.size();) {
    Index e = k;
    while (e < order.size() && values[order[e]] == values[order[k]]) ++e;
    const double r = 0.5 * static_cast<double>(k + 1 + e);
    for (Index t = k; t < e; ++t) ranks[order[t]] = r;
    k = e;
  }
  return ranks;
}

// sum over tie groups of (t^3 - t).
inline double tie_term(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (Index k = 0; k < v.size();) {
    Index e = k;
    while (e < v.size() && v[e] == v[k]) ++e;
    const double t = static_cast<double>(e - k);
    s += t * t * t - t;
    k = e;
  }
  return s;
}

inline TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw Error("kruskal_wallis: need at least 2 groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw Error("kruskal_wallis: empty group");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const double n = static_cast<double>(pooled.size());
  const double ties = tie_term(pooled);
  const double correction = 1.0 - ties / (n * n * n - n);
  if (correction <= 0.0) return TestResult::make(0.0, 1.0);
  const auto ranks = midranks(pooled);
  double sum = 0.0;
  Index offset = 0;
  for (const auto& g : groups) {
    double r = 0.0;
    for (Index k = 0; k < g.size(); ++k) r += ranks[offset + k];
    offset += g.size();
    sum += r * r / static_cast<double>(g.size());
  }
  const double h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
  return TestResult::make(h, chi2_sf(h, static_cast<double>(groups.size() - 1)));
}

// Wilcoxon rank-sum / Mann-Whitney U, two-sided normal approximation with
// tie correction. statistic = U of sample `a`.
inline TestResult rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("rank_sum: empty sample");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;
  double ra = 0.0;
  for (Index k = 0; k < a.size(); ++k) ra += ranks[k];
  const double u = ra - na * (na + 1.0) / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
  if (var <= 0.0) return TestResult::make(u, 1.0);
  const double z = (u - na * nb / 2.0) / std::sqrt(var);
  return TestResult::make(u, 2.0 * normal_sf(std::fabs(z)));
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw Error("median: empty sample");
  std::sort(v.begin(), v.end());
  const Index m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace sslbench::eval
