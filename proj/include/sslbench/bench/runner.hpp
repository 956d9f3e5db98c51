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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sslbench/bench/plan.hpp"
#include "sslbench/bench/results.hpp"
#include "sslbench/bench/techniques.hpp"
#include "sslbench/core/table_io.hpp"
#include "sslbench/eval/auc.hpp"
#include "sslbench/eval/bias.hpp"
#include "sslbench/synth/generate.hpp"
#include "sslbench/synth/missingness.hpp"

namespace sslbench::bench {

// A dataset ready for execution: fully labeled train set (unless the split
// is predefined), labeled test rows, and the split when it is fixed.
struct ResolvedDataset {
  DatasetSpec spec;
  Dataset train;
  Dataset test;
  std::optional<LabeledSplit> fixed_split;
};

inline Dataset labeled_rows_only(const Dataset& d) {
  std::vector<Index> keep;
  for (Index i = 0; i < d.n_rows(); ++i)
    if (d.has_label(i)) keep.push_back(i);
  return keep.size() == d.n_rows() ? d : d.subset(keep);
}

inline ResolvedDataset resolve_dataset(const DatasetSpec& spec, std::uint64_t master_seed) {
  ResolvedDataset r;
  r.spec = spec;
  const auto seed = dataset_seed(master_seed, spec.name);
  if (spec.generated()) {
    auto s = synth::parse_synth_name(spec.generate);
    s.n_features = spec.n_features;
    s.n_train = spec.train_size;
    s.n_test = spec.test_size;
    s.seed = seed;
    auto gen = synth::generate_artificial(s);
    r.train = gen.train.with_name(spec.name);
    r.test = gen.test.with_name(spec.name);
  } else {
    if (spec.test_path.empty()) throw Error("dataset '" + spec.name + "': file datasets need train and test");
    auto [train, test] = load_table_pair(spec.train_path, spec.test_path);
    r.train = train.with_name(spec.name);
    r.test = labeled_rows_only(test);
  }
  if (spec.fixed_split) {
    r.fixed_split = LabeledSplit::from_labels(r.train);
  } else {
    r.train = labeled_rows_only(r.train);
    if (spec.bias == Bias::kMar)
      r.fixed_split = synth::split_mar(r.train, spec.mar_i, spec.mar_j, spec.mar_unlabeled).split;
    else if (spec.bias == Bias::kMnar)
      r.fixed_split = synth::split_mnar(r.train, spec.mnar_fraction, spec.mnar_rho, seeds::derive(seed, "mnar"));
  }
  return r;
}

struct ExecuteOptions {
  int threads = 1;
  bool record_timing = false;
};

namespace detail {

inline std::vector<int> binary_targets(const Dataset& test) {
  std::vector<int> y(test.n_rows());
  for (Index i = 0; i < test.n_rows(); ++i) y[i] = test.label(i) == 1 ? 1 : 0;
  return y;
}

inline std::vector<ResultRecord> execute_one(const RunDescriptor& d, const ResolvedDataset& ds,
                                             const ExperimentConfig& cfg, const ExecuteOptions& opt) {
  std::vector<ResultRecord> out;
  auto base_record = [&](const TechniqueSpec& t) {
    ResultRecord r;
    r.dataset = d.dataset;
    r.technique = t.label();
    r.labeled_fraction = d.fraction;
    r.run = d.run;
    r.seed = d.seed;
    return r;
  };

  LabeledSplit split;
  try {
    split = ds.fixed_split ? *ds.fixed_split : synth::split_mcar(ds.train, d.fraction, d.seed);
  } catch (const std::exception& e) {
    for (const auto& t : cfg.techniques) {
      auto r = base_record(t);
      r.model_meta["error"] = e.what();
      out.push_back(std::move(r));
    }
    return out;
  }
  const double fraction = ds.fixed_split ? static_cast<double>(split.labeled.size()) /
                                               static_cast<double>(ds.train.n_rows())
                                         : d.fraction;
  nlohmann::json bias;
  if (!split.labeled.empty() && !split.unlabeled.empty()) {
    const auto rep = eval::bias_report(ds.train, split);
    bias = {{"different", rep.different()}, {"tested", rep.tested()}};
  }

  const SplitContext ctx(ds.train, split, ds.test, d.seed);
  const auto y = binary_targets(ds.test);
  for (const auto& t : cfg.techniques) {
    auto r = base_record(t);
    r.labeled_fraction = fraction;
    r.model_meta["labeled"] = split.labeled.size();
    r.model_meta["unlabeled"] = split.unlabeled.size();
    if (!t.hyper_key.empty()) r.model_meta[t.hyper_key] = t.hyper_value;
    if (t.name == "supervised" && !bias.is_null()) r.model_meta["bias"] = bias;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto res = run_technique(t, ctx);
      r.auc = eval::auc_normalized(res.scores, y);
      for (auto& [k, v] : res.meta.items()) r.model_meta[k] = v;
    } catch (const std::exception& e) {
      r.auc = std::numeric_limits<double>::quiet_NaN();
      r.model_meta["error"] = e.what();
    }
    if (opt.record_timing)
      r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

// Runs every descriptor with every configured technique. Descriptors are
// independent, so any thread count yields the same sorted records.
inline std::vector<ResultRecord> execute_plan(const RunPlan& plan, const ExperimentConfig& cfg,
                                              const ExecuteOptions& opt = {}) {
  std::map<std::string, ResolvedDataset> datasets;
  for (const auto& spec : cfg.datasets) datasets.emplace(spec.name, resolve_dataset(spec, cfg.master_seed));
  for (const auto& d : plan)
    if (!datasets.count(d.dataset)) throw Error("plan references unknown dataset '" + d.dataset + "'");

  std::vector<std::vector<ResultRecord>> slots(plan.size());
  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index k = next++; k < plan.size(); k = next++)
      slots[k] = detail::execute_one(plan[k], datasets.at(plan[k].dataset), cfg, opt);
  };
  const int n_threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(plan.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<ResultRecord> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

}  // namespace sslbench::bench
