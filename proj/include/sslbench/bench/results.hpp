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

// ResultRecord persistence as JSON Lines. A NaN auc (failed run) is
// written as null and read back as NaN.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "sslbench/common.hpp"

namespace sslbench::bench {

struct ResultRecord {
  std::string dataset;
  std::string technique;
  double labeled_fraction = 0.0;
  int run = 0;
  std::uint64_t seed = 0;
  double auc = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0.0;
  nlohmann::json model_meta = nlohmann::json::object();

  auto key() const { return std::tie(dataset, technique, labeled_fraction, run); }
};

inline bool record_less(const ResultRecord& a, const ResultRecord& b) { return a.key() < b.key(); }

inline nlohmann::json to_json(const ResultRecord& r) {
  nlohmann::json j;
  j["dataset"] = r.dataset;
  j["technique"] = r.technique;
  j["labeled_fraction"] = r.labeled_fraction;
  j["run"] = r.run;
  j["seed"] = r.seed;
  j["auc"] = std::isnan(r.auc) ? nlohmann::json(nullptr) : nlohmann::json(r.auc);
  j["wall_time"] = r.wall_time;
  j["model_meta"] = r.model_meta;
  return j;
}

inline ResultRecord record_from_json(const nlohmann::json& j) {
  ResultRecord r;
  r.dataset = j.at("dataset").get<std::string>();
  r.technique = j.at("technique").get<std::string>();
  r.labeled_fraction = j.at("labeled_fraction").get<double>();
  r.run = j.at("run").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.auc = j.at("auc").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("auc").get<double>();
  r.wall_time = j.value("wall_time", 0.0);
  r.model_meta = j.value("model_meta", nlohmann::json::object());
  return r;
}

// Sorts by key and rejects duplicate keys before writing.
inline void write_results(std::ostream& out, std::vector<ResultRecord> records) {
  std::sort(records.begin(), records.end(), record_less);
  for (Index i = 1; i < records.size(); ++i)
    if (records[i - 1].key() == records[i].key())
      throw Error("results: duplicate record for " + records[i].dataset + " / " + records[i].technique);
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline void save_results(const std::string& path, std::vector<ResultRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write results file '" + path + "'");
  write_results(out, std::move(records));
}

inline std::vector<ResultRecord> read_results(std::istream& in) {
  std::vector<ResultRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error("results line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<ResultRecord> load_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open results file '" + path + "'");
  return read_results(in);
}

}  // namespace sslbench::bench
