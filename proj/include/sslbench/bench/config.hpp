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

// Experiment configuration file:
//
//   master_seed = 7
//   n_runs      = 10
//   splits      = 0.01, 0.10, 0.33, 0.67, 0.90
//
//   [dataset 30_80_00_05]          generated from the name
//   train_size = 8000
//   test_size  = 4000
//
//   [dataset waveform]
//   train = data/waveform_train.csv
//   test  = data/waveform_test.csv
//   fixed_split = false            true: "?" labels in train define the split
//
//   [dataset 30_80_00_05_mar]
//   generate   = 30_80_00_05
//   bias       = mar               mar | mnar | none
//   mar_features   = 0, 1
//   mar_unlabeled  = 0.745
//
//   [technique cc]
//   M = 2, 6, 12, 24               one variant per value
//
// '#' starts a comment. Keys are case-sensitive.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sslbench/common.hpp"

namespace sslbench::bench {

inline const std::vector<std::string>& technique_names() {
  static const std::vector<std::string> names = {
      "supervised", "assemble-1nn", "assemble-class0", "sample-select", "reweight",
      "cotrain",    "cc",           "probit",          "biprobit"};
  return names;
}

enum class Bias { kNone, kMar, kMnar };

struct DatasetSpec {
  std::string name;
  std::string generate;        // A_B_C_D name when generated
  std::string train_path, test_path;
  Index train_size = 8000;
  Index test_size = 4000;
  int n_features = 30;
  bool fixed_split = false;
  Bias bias = Bias::kNone;
  Index mar_i = 0, mar_j = 1;
  double mar_unlabeled = 0.745;
  double mnar_rho = 0.8;
  double mnar_fraction = 0.25;

  bool generated() const { return !generate.empty(); }
  // One descriptor per technique instead of splits x runs.
  bool single_split() const { return fixed_split || bias != Bias::kNone; }
};

// One technique with one hyperparameter setting.
struct TechniqueSpec {
  std::string name;                         // legend name, e.g. "cc"
  std::map<std::string, std::string> params;
  std::string hyper_key;                    // swept parameter, if any
  std::string hyper_value;

  // Record label, e.g. "cc(M=6)".
  std::string label() const { return hyper_key.empty() ? name : name + "(" + hyper_key + "=" + hyper_value + ")"; }

  double get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stod(it->second);
  }
};

struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  int n_runs = 10;
  std::vector<double> splits = {0.01, 0.10, 0.33, 0.67, 0.90};
  std::vector<DatasetSpec> datasets;
  std::vector<TechniqueSpec> techniques;  // expanded variants; supervised always present
  int threads = 1;
  bool record_timing = false;

  void validate() const {
    if (n_runs < 1) throw Error("config: n_runs must be at least 1");
    if (splits.empty()) throw Error("config: no splits");
    for (double f : splits)
      if (!(f > 0.0 && f <= 1.0)) throw Error("config: split fractions must lie in (0, 1]");
    std::set<std::string> seen;
    for (const auto& d : datasets)
      if (!seen.insert(d.name).second) throw Error("config: duplicate dataset name '" + d.name + "'");
    for (const auto& t : techniques)
      if (std::find(technique_names().begin(), technique_names().end(), t.name) == technique_names().end())
        throw Error("config: unknown technique '" + t.name + "'");
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw Error("config: expected a boolean, got '" + v + "'");
}

// Hyperparameter swept per technique; the others are fixed settings.
inline std::string sweep_key(const std::string& technique) {
  if (technique == "cc") return "M";
  if (technique == "cotrain") return "confidence";
  if (technique == "assemble-1nn" || technique == "assemble-class0") return "alpha";
  return "";
}

inline std::string default_sweep(const std::string& technique) {
  if (technique == "cc") return "6";
  if (technique == "cotrain") return "0.95";
  if (technique == "assemble-1nn" || technique == "assemble-class0") return "1.0";
  return "";
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  struct RawTechnique {
    std::string name;
    std::map<std::string, std::string> params;
  };
  std::vector<RawTechnique> raw;
  enum class Section { kGlobal, kDataset, kTechnique } section = Section::kGlobal;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw Error("config line " + std::to_string(lineno) + ": " + msg);
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      const auto body = detail::trim(line.substr(1, line.size() - 2));
      const auto sp = body.find(' ');
      const auto kind = body.substr(0, sp);
      const auto name = sp == std::string::npos ? "" : detail::trim(body.substr(sp + 1));
      if (name.empty()) fail("section needs a name");
      if (kind == "dataset") {
        section = Section::kDataset;
        DatasetSpec d;
        d.name = name;
        cfg.datasets.push_back(d);
      } else if (kind == "technique") {
        section = Section::kTechnique;
        raw.push_back({name, {}});
      } else {
        fail("unknown section kind '" + kind + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    try {
      if (section == Section::kGlobal) {
        if (key == "master_seed") cfg.master_seed = std::stoull(value);
        else if (key == "n_runs") cfg.n_runs = std::stoi(value);
        else if (key == "threads") cfg.threads = std::stoi(value);
        else if (key == "splits") {
          cfg.splits.clear();
          for (const auto& v : detail::split_list(value)) cfg.splits.push_back(std::stod(v));
        } else fail("unknown global key '" + key + "'");
      } else if (section == Section::kDataset) {
        auto& d = cfg.datasets.back();
        if (key == "generate") d.generate = value;
        else if (key == "train") d.train_path = value;
        else if (key == "test") d.test_path = value;
        else if (key == "train_size") d.train_size = std::stoull(value);
        else if (key == "test_size") d.test_size = std::stoull(value);
        else if (key == "n_features") d.n_features = std::stoi(value);
        else if (key == "fixed_split") d.fixed_split = detail::parse_bool(value);
        else if (key == "bias") {
          if (value == "none") d.bias = Bias::kNone;
          else if (value == "mar") d.bias = Bias::kMar;
          else if (value == "mnar") d.bias = Bias::kMnar;
          else fail("bias must be none, mar or mnar");
        } else if (key == "mar_features") {
          const auto f = detail::split_list(value);
          if (f.size() != 2) fail("mar_features needs two column indices");
          d.mar_i = std::stoull(f[0]);
          d.mar_j = std::stoull(f[1]);
        } else if (key == "mar_unlabeled") d.mar_unlabeled = std::stod(value);
        else if (key == "mnar_rho") d.mnar_rho = std::stod(value);
        else if (key == "mnar_fraction") d.mnar_fraction = std::stod(value);
        else fail("unknown dataset key '" + key + "'");
      } else {
        raw.back().params[key] = value;
      }
    } catch (const std::invalid_argument&) {
      fail("bad value '" + value + "' for '" + key + "'");
    } catch (const std::out_of_range&) {
      fail("value out of range for '" + key + "'");
    }
  }

  // Datasets without a file or explicit generator name are generated from
  // their own name.
  for (auto& d : cfg.datasets)
    if (d.train_path.empty() && d.generate.empty()) d.generate = d.name;

  bool has_supervised = false;
  for (const auto& r : raw) {
    has_supervised |= r.name == "supervised";
    const auto key = detail::sweep_key(r.name);
    std::vector<std::string> values = {""};
    if (!key.empty()) {
      auto it = r.params.find(key);
      values = detail::split_list(it == r.params.end() ? detail::default_sweep(r.name) : it->second);
    }
    for (const auto& v : values) {
      TechniqueSpec t;
      t.name = r.name;
      t.params = r.params;
      if (!key.empty()) {
        t.hyper_key = key;
        t.hyper_value = v;
        t.params[key] = v;
      }
      cfg.techniques.push_back(std::move(t));
    }
  }
  if (!has_supervised) cfg.techniques.insert(cfg.techniques.begin(), TechniqueSpec{"supervised", {}, "", ""});
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  return parse_config(in);
}

}  // namespace sslbench::bench
