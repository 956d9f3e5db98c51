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

// Summaries of a results file: mean AUC per cell, hyperparameter grids,
// box-plot statistics, W-T-L tallies and the feature-shift report.
//
// Failed runs (NaN auc) are left out of means and box plots; a cell whose
// runs all failed reports "nan". W-T-L counts a failed run as AUC 0.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sslbench/bench/results.hpp"
#include "sslbench/eval/stats.hpp"
#include "sslbench/eval/wtl.hpp"

namespace sslbench::bench {

struct TechniqueLabel {
  std::string name;
  std::string key;
  std::string value;
};

// "cc(M=6)" -> {"cc", "M", "6"}; "supervised" -> {"supervised", "", ""}.
inline TechniqueLabel parse_label(const std::string& label) {
  const auto open = label.find('(');
  if (open == std::string::npos || label.back() != ')') return {label, "", ""};
  const auto inner = label.substr(open + 1, label.size() - open - 2);
  const auto eq = inner.find('=');
  if (eq == std::string::npos) return {label, "", ""};
  return {label.substr(0, open), inner.substr(0, eq), inner.substr(eq + 1)};
}

// Linear interpolation between order statistics (R type 7).
inline double quantile7(std::vector<double> v, double p) {
  if (v.empty()) throw Error("quantile7: empty sample");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<Index>(std::floor(h));
  const Index hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

struct BoxStats {
  double min = 0.0;  // lowest value inside the lower fence
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;  // highest value inside the upper fence
  std::vector<double> outliers;  // beyond 1.5 IQR from the quartiles
};

inline BoxStats box_stats(const std::vector<double>& values) {
  BoxStats b;
  b.q1 = quantile7(values, 0.25);
  b.median = quantile7(values, 0.5);
  b.q3 = quantile7(values, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo = b.q1 - 1.5 * iqr, hi = b.q3 + 1.5 * iqr;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  b.min = b.max = b.median;
  bool any = false;
  for (double v : sorted) {
    if (v < lo || v > hi) {
      b.outliers.push_back(v);
      continue;
    }
    if (!any) b.min = v;
    b.max = v;
    any = true;
  }
  return b;
}

struct CellKey {
  std::string dataset;
  double fraction = 0.0;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellStats {
  double mean = std::nan("");
  int runs = 0;
  int failed = 0;
};

// technique label -> (dataset, fraction) -> stats
using MeanTable = std::map<std::string, std::map<CellKey, CellStats>>;

inline MeanTable mean_table(const std::vector<ResultRecord>& records) {
  std::map<std::string, std::map<CellKey, std::vector<double>>> values;
  MeanTable out;
  for (const auto& r : records) {
    auto& cell = out[r.technique][{r.dataset, r.labeled_fraction}];
    ++cell.runs;
    if (std::isnan(r.auc)) ++cell.failed;
    else values[r.technique][{r.dataset, r.labeled_fraction}].push_back(r.auc);
  }
  for (auto& [tech, cells] : out)
    for (auto& [key, st] : cells) {
      auto it = values[tech].find(key);
      if (it == values[tech].end()) continue;
      // Sorted summation keeps the mean independent of record order.
      std::vector<double> v = it->second;
      std::sort(v.begin(), v.end());
      double s = 0.0;
      for (double x : v) s += x;
      st.mean = s / static_cast<double>(v.size());
    }
  return out;
}

// One hyperparameter grid: rows are (dataset, fraction), columns the
// values of the swept parameter.
struct Grid {
  std::string technique;
  std::string key;
  std::vector<std::string> values;
  std::map<CellKey, std::vector<double>> rows;  // parallel to `values`
};

inline std::vector<Grid> sensitivity_grids(const std::vector<ResultRecord>& records) {
  const auto means = mean_table(records);
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>> variants;
  for (const auto& [label, cells] : means) {
    const auto p = parse_label(label);
    if (!p.key.empty()) variants[{p.name, p.key}][p.value] = label;
  }
  std::vector<Grid> out;
  for (const auto& [nk, by_value] : variants) {
    Grid g;
    g.technique = nk.first;
    g.key = nk.second;
    for (const auto& [v, label] : by_value) g.values.push_back(v);
    std::sort(g.values.begin(), g.values.end(),
              [](const std::string& a, const std::string& b) { return std::stod(a) < std::stod(b); });
    std::set<CellKey> keys;
    for (const auto& v : g.values)
      for (const auto& [k, st] : means.at(by_value.at(v))) keys.insert(k);
    for (const auto& k : keys) {
      std::vector<double> row;
      for (const auto& v : g.values) {
        const auto& cells = means.at(by_value.at(v));
        auto it = cells.find(k);
        row.push_back(it == cells.end() ? std::nan("") : it->second.mean);
      }
      g.rows[k] = row;
    }
    out.push_back(std::move(g));
  }
  return out;
}

// Box plot per technique over its per-cell mean AUCs.
inline std::map<std::string, BoxStats> boxplots(const std::vector<ResultRecord>& records) {
  std::map<std::string, BoxStats> out;
  for (const auto& [tech, cells] : mean_table(records)) {
    std::vector<double> v;
    for (const auto& [k, st] : cells)
      if (!std::isnan(st.mean)) v.push_back(st.mean);
    if (!v.empty()) out[tech] = box_stats(v);
  }
  return out;
}

// fraction -> dataset -> technique -> AUCs ordered by run.
inline std::map<double, eval::RunTable> run_tables(const std::vector<ResultRecord>& records) {
  std::vector<ResultRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), record_less);
  std::map<double, eval::RunTable> out;
  for (const auto& r : sorted) out[r.labeled_fraction][r.dataset][r.technique].push_back(r.auc);
  return out;
}

// W-T-L per labeled fraction. Cells with a single run (predefined or
// biased splits) carry no replication and are left out.
inline std::map<double, std::map<std::string, eval::WinTieLoss>> wtl_by_fraction(
    const std::vector<ResultRecord>& records, const std::string& baseline, double alpha = 0.05) {
  std::map<double, std::map<std::string, eval::WinTieLoss>> out;
  for (auto& [fraction, table] : run_tables(records)) {
    eval::RunTable replicated;
    for (const auto& [cell, by_tech] : table) {
      auto it = by_tech.find(baseline);
      if (it != by_tech.end() && it->second.size() >= 2) replicated[cell] = by_tech;
    }
    if (replicated.empty()) continue;
    out[fraction] = eval::wtl_tally(replicated, baseline, alpha);
  }
  return out;
}

// Kruskal-Wallis across techniques on the pooled replicated runs.
inline std::map<double, eval::TestResult> kruskal_by_fraction(const std::vector<ResultRecord>& records) {
  std::map<double, eval::TestResult> out;
  for (auto& [fraction, table] : run_tables(records)) {
    std::map<std::string, std::vector<double>> groups;
    for (const auto& [cell, by_tech] : table)
      for (const auto& [tech, v] : by_tech) {
        if (v.size() < 2) continue;
        for (double x : v) groups[tech].push_back(eval::auc_for_ranking(x));
      }
    if (groups.size() < 2) continue;
    std::vector<std::vector<double>> g;
    for (auto& [t, v] : groups) g.push_back(v);
    out[fraction] = eval::kruskal_wallis(g);
  }
  return out;
}

struct BiasRow {
  std::string dataset;
  double fraction = 0.0;
  double median_different = 0.0;  // over runs
  int tested = 0;
  int runs = 0;
};

// Feature-shift counts stored by the harness on the supervised records.
inline std::vector<BiasRow> bias_rows(const std::vector<ResultRecord>& records) {
  std::map<CellKey, std::pair<std::vector<double>, int>> acc;
  for (const auto& r : records) {
    if (r.technique != "supervised" || !r.model_meta.contains("bias")) continue;
    auto& a = acc[{r.dataset, r.labeled_fraction}];
    a.first.push_back(r.model_meta["bias"].at("different").get<double>());
    a.second = r.model_meta["bias"].at("tested").get<int>();
  }
  std::vector<BiasRow> out;
  for (const auto& [k, a] : acc)
    out.push_back({k.dataset, k.fraction, eval::median(a.first), a.second, static_cast<int>(a.first.size())});
  return out;
}

// ---- formatting ----------------------------------------------------------

inline std::string fmt4(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// 0.01 -> "(1,99)"; 0.254 -> "(25.4,74.6)".
inline std::string split_label(double fraction) {
  auto pct = [](double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::round(p * 100.0) / 100.0);
    return std::string(buf);
  };
  return "(" + pct(fraction * 100.0) + "," + pct(100.0 - fraction * 100.0) + ")";
}

inline void write_report_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  const auto means = mean_table(records);
  std::set<CellKey> keys;
  for (const auto& [t, cells] : means)
    for (const auto& [k, st] : cells) keys.insert(k);
  out << "# mean normalized AUC\ndataset,split";
  for (const auto& [t, cells] : means) out << ',' << t;
  out << '\n';
  for (const auto& k : keys) {
    out << k.dataset << ",\"" << split_label(k.fraction) << '"';
    for (const auto& [t, cells] : means) {
      auto it = cells.find(k);
      out << ',' << (it == cells.end() ? "" : fmt4(it->second.mean));
    }
    out << '\n';
  }
  for (const auto& g : sensitivity_grids(records)) {
    out << "\n# " << g.technique << " sensitivity to " << g.key << "\ndataset,split";
    for (const auto& v : g.values) out << ',' << g.key << '=' << v;
    out << '\n';
    for (const auto& [k, row] : g.rows) {
      out << k.dataset << ",\"" << split_label(k.fraction) << '"';
      for (double v : row) out << ',' << fmt4(v);
      out << '\n';
    }
  }
  out << "\n# box plot over per-cell means\ntechnique,min,q1,median,q3,max,outliers\n";
  for (const auto& [t, b] : boxplots(records)) {
    out << t << ',' << fmt4(b.min) << ',' << fmt4(b.q1) << ',' << fmt4(b.median) << ',' << fmt4(b.q3) << ','
        << fmt4(b.max) << ",\"";
    for (Index i = 0; i < b.outliers.size(); ++i) out << (i ? " " : "") << fmt4(b.outliers[i]);
    out << "\"\n";
  }
}

inline void write_report_text(std::ostream& out, const std::vector<ResultRecord>& records) {
  const auto means = mean_table(records);
  out << "Mean normalized AUC\n";
  for (const auto& [t, cells] : means) {
    out << "  " << t << '\n';
    for (const auto& [k, st] : cells) {
      out << "    " << k.dataset << ' ' << split_label(k.fraction) << "  " << fmt4(st.mean) << "  (" << st.runs
          << " runs";
      if (st.failed) out << ", " << st.failed << " failed";
      out << ")\n";
    }
  }
  for (const auto& g : sensitivity_grids(records)) {
    out << '\n' << g.technique << " by " << g.key << '\n';
    out << "  dataset split";
    for (const auto& v : g.values) out << "  " << g.key << '=' << v;
    out << '\n';
    for (const auto& [k, row] : g.rows) {
      out << "  " << k.dataset << ' ' << split_label(k.fraction);
      for (double v : row) out << "  " << fmt4(v);
      out << '\n';
    }
  }
  out << "\nBox plot (min q1 median q3 max; outliers)\n";
  for (const auto& [t, b] : boxplots(records)) {
    out << "  " << t << "  " << fmt4(b.min) << ' ' << fmt4(b.q1) << ' ' << fmt4(b.median) << ' ' << fmt4(b.q3)
        << ' ' << fmt4(b.max) << ";";
    for (double o : b.outliers) out << ' ' << fmt4(o);
    out << '\n';
  }
}

inline void write_stats_text(std::ostream& out, const std::vector<ResultRecord>& records,
                             const std::string& baseline, double alpha = 0.05) {
  const auto wtl = wtl_by_fraction(records, baseline, alpha);
  std::set<std::string> techs;
  for (const auto& [f, m] : wtl)
    for (const auto& [t, x] : m) techs.insert(t);
  out << "W-T-L against " << baseline << " (rank-sum, alpha " << alpha << ")\n";
  out << "technique";
  for (const auto& [f, m] : wtl) out << '\t' << split_label(f);
  out << '\n';
  for (const auto& t : techs) {
    out << t;
    for (const auto& [f, m] : wtl) {
      auto it = m.find(t);
      out << '\t' << (it == m.end() ? "-" : it->second.str());
    }
    out << '\n';
  }
  out << "\nKruskal-Wallis across techniques\n";
  for (const auto& [f, r] : kruskal_by_fraction(records))
    out << split_label(f) << "\tH=" << fmt4(r.statistic) << "\tp=" << fmt4(r.p_value) << '\n';
  out << "\nLabeled vs unlabeled feature shift (KS / chi-squared, alpha 0.05)\n";
  for (const auto& b : bias_rows(records)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", b.median_different);
    out << b.dataset << ' ' << split_label(b.fraction) << '\t' << buf << " out of " << b.tested
        << " different";
    if (b.runs > 1) out << " (median of " << b.runs << " runs)";
    out << '\n';
  }
}

}  // namespace sslbench::bench
