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
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sslbench/common.hpp"

namespace sslbench {

// Column type. Nominal values are stored as category indices in [0, arity).
struct FeatureKind {
  enum class Type { kContinuous, kNominal };

  Type type = Type::kContinuous;
  int arity = 0;

  static FeatureKind continuous() { return {Type::kContinuous, 0}; }
  static FeatureKind nominal(int arity) {
    if (arity < 2) throw Error("nominal feature needs arity >= 2, got " + std::to_string(arity));
    return {Type::kNominal, arity};
  }

  bool is_continuous() const { return type == Type::kContinuous; }
  bool is_nominal() const { return type == Type::kNominal; }

  friend bool operator==(const FeatureKind&, const FeatureKind&) = default;
};

inline constexpr int kMissingLabel = -1;

// Immutable row-major feature table with optional class labels.
//
// Continuous cells hold reals, nominal cells hold category indices as
// doubles. A NaN continuous cell is tolerated only so that a regression
// target can be carried until binarize_target() turns it into a label.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::string name, std::vector<FeatureKind> meta, std::vector<double> values,
          std::vector<int> labels, int n_classes, std::vector<std::string> feature_names = {})
      : name_(std::move(name)),
        meta_(std::move(meta)),
        values_(std::move(values)),
        labels_(std::move(labels)),
        n_classes_(n_classes),
        feature_names_(std::move(feature_names)) {
    validate();
  }

  const std::string& name() const { return name_; }
  Index n_rows() const { return labels_.size(); }
  Index n_features() const { return meta_.size(); }
  int n_classes() const { return n_classes_; }
  const std::vector<FeatureKind>& meta() const { return meta_; }
  const FeatureKind& kind(Index j) const { return meta_[j]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::span<const double> row(Index i) const {
    return {values_.data() + i * meta_.size(), meta_.size()};
  }
  double at(Index i, Index j) const { return values_[i * meta_.size() + j]; }
  int label(Index i) const { return labels_[i]; }
  bool has_label(Index i) const { return labels_[i] != kMissingLabel; }

  bool all_nominal() const {
    return std::all_of(meta_.begin(), meta_.end(), [](const auto& k) { return k.is_nominal(); });
  }
  bool any_continuous() const { return !all_nominal(); }

  std::vector<double> column(Index j) const {
    std::vector<double> out(n_rows());
    for (Index i = 0; i < n_rows(); ++i) out[i] = at(i, j);
    return out;
  }

  Dataset with_labels(std::vector<int> labels) const {
    return Dataset(name_, meta_, values_, std::move(labels), n_classes_, feature_names_);
  }
  Dataset with_name(std::string name) const {
    return Dataset(std::move(name), meta_, values_, labels_, n_classes_, feature_names_);
  }

  // Rows in `idx` order.
  Dataset subset(std::span<const Index> idx) const {
    std::vector<double> values;
    values.reserve(idx.size() * n_features());
    std::vector<int> labels;
    labels.reserve(idx.size());
    for (Index i : idx) {
      if (i >= n_rows()) throw Error("subset: row index out of range");
      auto r = row(i);
      values.insert(values.end(), r.begin(), r.end());
      labels.push_back(labels_[i]);
    }
    return Dataset(name_, meta_, std::move(values), std::move(labels), n_classes_,
                   feature_names_);
  }

  // Appends one continuous column.
  Dataset append_continuous(const std::vector<double>& column, std::string column_name) const {
    if (column.size() != n_rows()) throw Error("append_continuous: column length mismatch");
    auto meta = meta_;
    meta.push_back(FeatureKind::continuous());
    std::vector<double> values;
    values.reserve(n_rows() * meta.size());
    for (Index i = 0; i < n_rows(); ++i) {
      auto r = row(i);
      values.insert(values.end(), r.begin(), r.end());
      values.push_back(column[i]);
    }
    auto names = feature_names_;
    if (!names.empty()) names.push_back(std::move(column_name));
    return Dataset(name_, std::move(meta), std::move(values), labels_, n_classes_,
                   std::move(names));
  }

 private:
  void validate() const {
    if (n_classes_ < 2) throw Error("dataset needs at least 2 classes");
    if (values_.size() != labels_.size() * meta_.size())
      throw Error("dataset: value count does not match rows x features");
    if (!feature_names_.empty() && feature_names_.size() != meta_.size())
      throw Error("dataset: feature name count mismatch");
    for (int y : labels_) {
      if (y != kMissingLabel && (y < 0 || y >= n_classes_))
        throw Error("dataset: label " + std::to_string(y) + " outside [0, K)");
    }
    const Index d = meta_.size();
    for (Index j = 0; j < d; ++j) {
      if (!meta_[j].is_nominal()) continue;
      if (meta_[j].arity < 2) throw Error("dataset: nominal arity < 2");
      for (Index i = 0; i < labels_.size(); ++i) {
        const double v = values_[i * d + j];
        if (!(v >= 0.0) || v >= meta_[j].arity || v != std::floor(v))
          throw Error("dataset: nominal value out of range in column " + std::to_string(j));
      }
    }
  }

  std::string name_;
  std::vector<FeatureKind> meta_;
  std::vector<double> values_;
  std::vector<int> labels_;
  int n_classes_ = 2;
  std::vector<std::string> feature_names_;
};

// Disjoint partition of a training set into labeled and unlabeled rows.
struct LabeledSplit {
  std::vector<Index> labeled;
  std::vector<Index> unlabeled;

  Index size() const { return labeled.size() + unlabeled.size(); }

  std::vector<bool> labeled_mask(Index n) const {
    std::vector<bool> mask(n, false);
    for (Index i : labeled) mask[i] = true;
    return mask;
  }

  // Throws unless the split is a partition of [0, n) whose labeled rows
  // carry labels in `data`.
  void check(const Dataset& data) const {
    const Index n = data.n_rows();
    std::vector<char> seen(n, 0);
    for (Index i : labeled) {
      if (i >= n) throw Error("split: labeled index out of range");
      if (seen[i]++) throw Error("split: duplicate index");
      if (!data.has_label(i)) throw Error("split: labeled row without label");
    }
    for (Index i : unlabeled) {
      if (i >= n) throw Error("split: unlabeled index out of range");
      if (seen[i]++) throw Error("split: index in both pools");
    }
    if (size() != n) throw Error("split: pools do not cover all rows");
  }

  // Split implied by the label column: rows with a label are labeled.
  static LabeledSplit from_labels(const Dataset& data) {
    LabeledSplit s;
    for (Index i = 0; i < data.n_rows(); ++i)
      (data.has_label(i) ? s.labeled : s.unlabeled).push_back(i);
    return s;
  }
};

// Copy of `data` where only rows in split.labeled keep their labels.
inline Dataset hide_unlabeled(const Dataset& data, const LabeledSplit& split) {
  std::vector<int> labels(data.n_rows(), kMissingLabel);
  for (Index i : split.labeled) labels[i] = data.label(i);
  return data.with_labels(std::move(labels));
}

inline std::vector<Index> iota_index(Index n) {
  std::vector<Index> out(n);
  for (Index i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace sslbench
