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

#include <bit>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "sslbench/bench/config.hpp"

namespace sslbench::bench {

struct RunDescriptor {
  std::string dataset;
  double fraction = 0.0;  // requested labeled fraction; 0 for single-split datasets
  int run = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunDescriptor&, const RunDescriptor&) = default;
};

using RunPlan = std::vector<RunDescriptor>;

// combine(combine(combine(master, fnv1a(dataset)), bits(fraction)), run).
// Depends only on the descriptor's key, never on its position in the plan.
inline std::uint64_t child_seed(std::uint64_t master, const std::string& dataset, double fraction, int run) {
  std::uint64_t s = seeds::combine(master, seeds::hash_text(dataset));
  s = seeds::combine(s, std::bit_cast<std::uint64_t>(fraction));
  return seeds::combine(s, static_cast<std::uint64_t>(run));
}

inline std::uint64_t dataset_seed(std::uint64_t master, const std::string& dataset) {
  return seeds::derive(master, "dataset/" + dataset);
}

// datasets x splits x runs; single-split datasets contribute one descriptor.
inline RunPlan plan_runs(const ExperimentConfig& cfg) {
  cfg.validate();
  RunPlan plan;
  for (const auto& d : cfg.datasets) {
    if (d.single_split()) {
      plan.push_back({d.name, 0.0, 0, child_seed(cfg.master_seed, d.name, 0.0, 0)});
      continue;
    }
    for (double f : cfg.splits)
      for (int r = 0; r < cfg.n_runs; ++r) plan.push_back({d.name, f, r, child_seed(cfg.master_seed, d.name, f, r)});
  }
  return plan;
}

}  // namespace sslbench::bench
