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

// CSV tables with a typed header line.
//
//   a:num,b:cat,c:cat(3),y:class
//
// num   real-valued column; "?" reads as NaN (only meaningful for a
//       regression target that is later binarized).
// cat   nominal column. Non-negative integer cells are category indices
//       and the arity is max+1; otherwise the distinct tokens are sorted
//       and numbered. cat(k) fixes the arity and requires integer cells < k.
// class the label column (at most one). "?" marks a missing label.
//       class(K) fixes the class count.
//
// save_table() always writes cat(k) / class(K) with integer cells, so a
// saved table loads back bit-identically.

#pragma once

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sslbench/core/dataset.hpp"

namespace sslbench {

inline constexpr std::string_view kMissingToken = "?";

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<long> parse_index(const std::string& s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

inline double parse_real(const std::string& s, Index line_no) {
  if (s == kMissingToken) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  return v;
}

inline std::string format_real(double v) {
  if (std::isnan(v)) return std::string(kMissingToken);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct ColumnSpec {
  std::string name;
  enum class Kind { kNum, kCat, kClass } kind = Kind::kNum;
  std::optional<int> fixed_arity;
};

inline ColumnSpec parse_column_spec(const std::string& field) {
  auto colon = field.rfind(':');
  if (colon == std::string::npos) throw Error("header field '" + field + "' lacks ':type'");
  ColumnSpec spec;
  spec.name = trim(std::string_view(field).substr(0, colon));
  std::string type = trim(std::string_view(field).substr(colon + 1));
  std::optional<int> arity;
  if (auto open = type.find('('); open != std::string::npos) {
    auto close = type.find(')', open);
    if (close == std::string::npos || close != type.size() - 1)
      throw Error("header field '" + field + "': bad arity syntax");
    auto n = parse_index(type.substr(open + 1, close - open - 1));
    if (!n || *n < 2) throw Error("header field '" + field + "': arity must be >= 2");
    arity = static_cast<int>(*n);
    type = type.substr(0, open);
  }
  if (type == "num") {
    if (arity) throw Error("header field '" + field + "': num takes no arity");
    spec.kind = ColumnSpec::Kind::kNum;
  } else if (type == "cat") {
    spec.kind = ColumnSpec::Kind::kCat;
  } else if (type == "class") {
    spec.kind = ColumnSpec::Kind::kClass;
  } else {
    throw Error("header field '" + field + "': unknown type '" + type + "'");
  }
  spec.fixed_arity = arity;
  return spec;
}

// Maps the raw tokens of one nominal column to indices. Returns the arity.
inline int encode_nominal(const std::vector<std::string>& tokens, std::optional<int> fixed,
                          bool allow_missing, std::vector<int>& out, const std::string& col) {
  out.assign(tokens.size(), kMissingLabel);
  bool all_integer = true;
  std::set<std::string> distinct;
  for (const auto& t : tokens) {
    if (allow_missing && t == kMissingToken) continue;
    if (!parse_index(t)) all_integer = false;
    distinct.insert(t);
  }
  if (fixed && !all_integer)
    throw Error("column '" + col + "': fixed arity requires integer category cells");
  if (all_integer) {
    long max_v = -1;
    for (Index i = 0; i < tokens.size(); ++i) {
      if (allow_missing && tokens[i] == kMissingToken) continue;
      long v = *parse_index(tokens[i]);
      if (fixed && v >= *fixed)
        throw Error("column '" + col + "': unknown category " + tokens[i]);
      out[i] = static_cast<int>(v);
      max_v = std::max(max_v, v);
    }
    if (fixed) return *fixed;
    return std::max<int>(2, static_cast<int>(max_v + 1));
  }
  std::map<std::string, int> code;
  for (const auto& t : distinct) code.emplace(t, static_cast<int>(code.size()));
  for (Index i = 0; i < tokens.size(); ++i) {
    if (allow_missing && tokens[i] == kMissingToken) continue;
    out[i] = code.at(tokens[i]);
  }
  return std::max<int>(2, static_cast<int>(code.size()));
}

}  // namespace detail

inline Dataset parse_table(std::istream& in, std::string name) {
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) break;
  }
  if (detail::trim(line).empty()) throw Error("table '" + name + "' has no header");

  std::vector<detail::ColumnSpec> cols;
  for (const auto& f : detail::split_fields(line)) cols.push_back(detail::parse_column_spec(f));
  int class_col = -1;
  for (Index c = 0; c < cols.size(); ++c) {
    if (cols[c].kind != detail::ColumnSpec::Kind::kClass) continue;
    if (class_col >= 0) throw Error("table '" + name + "': more than one class column");
    class_col = static_cast<int>(c);
  }

  std::vector<std::vector<std::string>> cells(cols.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_fields(line);
    if (fields.size() != cols.size())
      throw Error("line " + std::to_string(line_no) + ": row width " +
                  std::to_string(fields.size()) + " does not match header width " +
                  std::to_string(cols.size()));
    for (Index c = 0; c < cols.size(); ++c) cells[c].push_back(std::move(fields[c]));
  }
  const Index n = cells.empty() ? 0 : cells[0].size();

  std::vector<FeatureKind> meta;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<int> labels(n, kMissingLabel);
  int n_classes = 2;
  for (Index c = 0; c < cols.size(); ++c) {
    const auto& spec = cols[c];
    switch (spec.kind) {
      case detail::ColumnSpec::Kind::kNum: {
        std::vector<double> col(n);
        for (Index i = 0; i < n; ++i) col[i] = detail::parse_real(cells[c][i], i + 2);
        meta.push_back(FeatureKind::continuous());
        names.push_back(spec.name);
        columns.push_back(std::move(col));
        break;
      }
      case detail::ColumnSpec::Kind::kCat: {
        std::vector<int> codes;
        int arity = detail::encode_nominal(cells[c], spec.fixed_arity, false, codes, spec.name);
        meta.push_back(FeatureKind::nominal(arity));
        names.push_back(spec.name);
        columns.emplace_back(codes.begin(), codes.end());
        break;
      }
      case detail::ColumnSpec::Kind::kClass:
        n_classes = detail::encode_nominal(cells[c], spec.fixed_arity, true, labels, spec.name);
        break;
    }
  }

  std::vector<double> values(n * meta.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < meta.size(); ++j) values[i * meta.size() + j] = columns[j][i];
  return Dataset(std::move(name), std::move(meta), std::move(values), std::move(labels),
                 n_classes, std::move(names));
}

inline std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.rfind('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

inline Dataset load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table '" + path + "'");
  return parse_table(in, stem_of(path));
}

// Loads a train/test pair with one shared encoding: string categories get
// the same indices in both files and arities cover the union.
inline std::pair<Dataset, Dataset> load_table_pair(const std::string& train_path, const std::string& test_path) {
  std::string header;
  std::ostringstream body;
  Index n_train = 0;
  for (const std::string* path : {&train_path, &test_path}) {
    std::ifstream in(*path);
    if (!in) throw Error("cannot open table '" + *path + "'");
    std::string line, own_header;
    Index rows = 0;
    while (std::getline(in, line)) {
      if (detail::trim(line).empty()) continue;
      if (own_header.empty()) {
        own_header = detail::trim(line);
        continue;
      }
      body << line << '\n';
      ++rows;
    }
    if (own_header.empty()) throw Error("table '" + *path + "' has no header");
    if (path == &train_path) {
      header = own_header;
      n_train = rows;
    } else if (own_header != header) {
      throw Error("tables '" + train_path + "' and '" + test_path + "' have different headers");
    }
  }
  std::istringstream joined(header + "\n" + body.str());
  const Dataset all = parse_table(joined, stem_of(train_path));
  std::vector<Index> a(n_train), b(all.n_rows() - n_train);
  for (Index i = 0; i < a.size(); ++i) a[i] = i;
  for (Index i = 0; i < b.size(); ++i) b[i] = n_train + i;
  return {all.subset(a), all.subset(b).with_name(stem_of(test_path))};
}

inline void write_table(std::ostream& out, const Dataset& data) {
  const Index d = data.n_features();
  for (Index j = 0; j < d; ++j) {
    out << (data.feature_names().empty() ? "f" + std::to_string(j) : data.feature_names()[j]);
    const auto& k = data.kind(j);
    out << (k.is_nominal() ? ":cat(" + std::to_string(k.arity) + ")" : std::string(":num"))
        << ',';
  }
  out << "class:class(" << data.n_classes() << ")\n";
  for (Index i = 0; i < data.n_rows(); ++i) {
    for (Index j = 0; j < d; ++j) {
      const double v = data.at(i, j);
      if (data.kind(j).is_nominal())
        out << static_cast<long>(v);
      else
        out << detail::format_real(v);
      out << ',';
    }
    if (data.has_label(i))
      out << data.label(i);
    else
      out << kMissingToken;
    out << '\n';
  }
}

inline void save_table(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write table '" + path + "'");
  write_table(out, data);
}

}  // namespace sslbench
