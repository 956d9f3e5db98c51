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

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sslbench/eval/stats.hpp"

namespace sslbench::eval {

struct WinTieLoss {
  int wins = 0;
  int ties = 0;
  int losses = 0;

  int total() const { return wins + ties + losses; }
  std::string str() const {
    return std::to_string(wins) + "-" + std::to_string(ties) + "-" + std::to_string(losses);
  }
  friend bool operator==(const WinTieLoss&, const WinTieLoss&) = default;
};

// dataset cell -> technique -> per-run AUCs
using RunTable = std::map<std::string, std::map<std::string, std::vector<double>>>;

// A failed run carries NaN; for ranking it counts as random performance.
inline double auc_for_ranking(double auc) { return std::isnan(auc) ? 0.0 : auc; }

// Per dataset cell, a two-sided rank-sum test of each technique against
// the baseline: significant with the higher median is a win, significant
// with the lower median a loss, anything else a tie.
inline std::map<std::string, WinTieLoss> wtl_tally(const RunTable& runs,
                                                   const std::string& baseline,
                                                   double alpha = 0.05) {
  std::map<std::string, WinTieLoss> out;
  for (const auto& [cell, by_tech] : runs) {
    auto base_it = by_tech.find(baseline);
    if (base_it == by_tech.end())
      throw Error("wtl_tally: baseline '" + baseline + "' missing for '" + cell + "'");
    std::vector<double> base;
    for (double v : base_it->second) base.push_back(auc_for_ranking(v));
    for (const auto& [tech, values] : by_tech) {
      if (tech == baseline) continue;
      if (values.size() != base.size())
        throw Error("wtl_tally: run count mismatch for '" + tech + "' on '" + cell + "'");
      std::vector<double> v;
      for (double x : values) v.push_back(auc_for_ranking(x));
      auto& tally = out[tech];
      const auto test = rank_sum(v, base);
      const double mt = median(v), mb = median(base);
      if (test.p_value < alpha && mt > mb)
        ++tally.wins;
      else if (test.p_value < alpha && mt < mb)
        ++tally.losses;
      else
        ++tally.ties;
    }
  }
  return out;
}

}  // namespace sslbench::eval
