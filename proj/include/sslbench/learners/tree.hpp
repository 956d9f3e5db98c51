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
#include <vector>

#include "sslbench/learners/classifier.hpp"

namespace sslbench {

struct TreeConfig {
  int max_depth = 12;
  double min_leaf_weight = 2.0;
};

// Binary decision tree over nominal features. Internal nodes test
// `x[feature] == category`; leaves hold weighted class counts and the
// Laplace-corrected estimate (n_k + 1) / (n + K).
class TreeModel final : public Model {
 public:
  struct Node {
    int feature = -1;      // -1 for a leaf
    int category = 0;
    int left = -1;         // x[feature] == category
    int right = -1;        // otherwise
    std::vector<double> counts;

    bool is_leaf() const { return feature < 0; }
  };

  TreeModel(std::vector<Node> nodes, int n_classes, Index n_features)
      : nodes_(std::move(nodes)), n_classes_(n_classes), n_features_(n_features) {}

  int n_classes() const override { return n_classes_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  int depth() const { return depth_of(0); }

  std::vector<double> predict_proba(std::span<const double> row) const override {
    if (row.size() != n_features_) throw Error("tree: row width mismatch");
    const Node* node = &nodes_[0];
    while (!node->is_leaf())
      node = &nodes_[row[node->feature] == node->category ? node->left : node->right];
    return laplace(node->counts);
  }

  static std::vector<double> laplace(const std::vector<double>& counts) {
    double n = 0.0;
    for (double c : counts) n += c;
    std::vector<double> p(counts.size());
    for (Index k = 0; k < counts.size(); ++k)
      p[k] = (counts[k] + 1.0) / (n + static_cast<double>(counts.size()));
    return p;
  }

  nlohmann::json to_json() const override {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_)
      nodes.push_back({{"feature", n.feature},
                       {"category", n.category},
                       {"left", n.left},
                       {"right", n.right},
                       {"counts", n.counts}});
    return {{"format_version", kModelFormatVersion},
            {"type", "tree"},
            {"n_classes", n_classes_},
            {"n_features", n_features_},
            {"nodes", nodes}};
  }

  static TreeModel from_json(const nlohmann::json& j) {
    if (j.at("type") != "tree") throw Error("not a tree document");
    if (j.at("format_version") != kModelFormatVersion) throw Error("unsupported model version");
    std::vector<Node> nodes;
    for (const auto& n : j.at("nodes"))
      nodes.push_back({n.at("feature").get<int>(), n.at("category").get<int>(),
                       n.at("left").get<int>(), n.at("right").get<int>(),
                       n.at("counts").get<std::vector<double>>()});
    return TreeModel(std::move(nodes), j.at("n_classes").get<int>(),
                     j.at("n_features").get<Index>());
  }

 private:
  int depth_of(int id) const {
    const auto& n = nodes_[id];
    if (n.is_leaf()) return 0;
    return 1 + std::max(depth_of(n.left), depth_of(n.right));
  }

  std::vector<Node> nodes_;
  int n_classes_;
  Index n_features_;
};

namespace detail {

inline double entropy_w(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  return h;
}

class TreeBuilder {
 public:
  TreeBuilder(const FitInput& in, const TreeConfig& cfg)
      : in_(in), cfg_(cfg), w_(in.normalized_weights()) {}

  std::vector<TreeModel::Node> build() {
    std::vector<Index> all(in_.rows.size());
    for (Index r = 0; r < all.size(); ++r) all[r] = r;
    grow(all, 0);
    return std::move(nodes_);
  }

 private:
  int grow(const std::vector<Index>& members, int depth) {
    const int K = in_.n_classes;
    TreeModel::Node node;
    node.counts.assign(K, 0.0);
    double total = 0.0;
    for (Index r : members) {
      node.counts[in_.targets[r]] += w_[r];
      total += w_[r];
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);

    const double h = entropy_w(node.counts, total);
    if (depth >= cfg_.max_depth || h <= 1e-12 || total < 2.0 * cfg_.min_leaf_weight) return id;

    double best_ratio = 0.0;
    int best_f = -1, best_c = 0;
    const Index d = in_.data.n_features();
    for (Index j = 0; j < d; ++j) {
      const int arity = in_.data.kind(j).arity;
      std::vector<std::vector<double>> by_cat(arity, std::vector<double>(K, 0.0));
      std::vector<double> cat_w(arity, 0.0);
      for (Index r : members) {
        const auto c = static_cast<Index>(in_.data.at(in_.rows[r], j));
        by_cat[c][in_.targets[r]] += w_[r];
        cat_w[c] += w_[r];
      }
      for (int c = 0; c < arity; ++c) {
        const double nl = cat_w[c], nr = total - nl;
        if (nl < cfg_.min_leaf_weight || nr < cfg_.min_leaf_weight) continue;
        std::vector<double> right(K);
        for (int k = 0; k < K; ++k) right[k] = node.counts[k] - by_cat[c][k];
        const double gain =
            h - (nl * entropy_w(by_cat[c], nl) + nr * entropy_w(right, nr)) / total;
        if (gain <= 1e-12) continue;
        const double pl = nl / total, pr = nr / total;
        const double split_info = -(pl * std::log2(pl) + pr * std::log2(pr));
        const double ratio = gain / split_info;
        if (ratio > best_ratio + 1e-12) {
          best_ratio = ratio;
          best_f = static_cast<int>(j);
          best_c = c;
        }
      }
    }
    if (best_f < 0) return id;

    std::vector<Index> left, right;
    for (Index r : members)
      (in_.data.at(in_.rows[r], best_f) == best_c ? left : right).push_back(r);
    const int l = grow(left, depth + 1);
    const int rgt = grow(right, depth + 1);
    nodes_[id].feature = best_f;
    nodes_[id].category = best_c;
    nodes_[id].left = l;
    nodes_[id].right = rgt;
    return id;
  }

  const FitInput& in_;
  TreeConfig cfg_;
  std::vector<double> w_;
  std::vector<TreeModel::Node> nodes_;
};

}  // namespace detail

// Greedy gain-ratio tree. max_depth = 0 gives a single Laplace leaf.
inline TreeModel tree_fit(const FitInput& in, const TreeConfig& cfg = {}) {
  in.check();
  if (!in.data.all_nominal())
    throw Error("tree needs nominal features; discretize continuous columns first");
  detail::TreeBuilder builder(in, cfg);
  return TreeModel(builder.build(), in.n_classes, in.data.n_features());
}

inline std::vector<double> tree_predict_proba(const TreeModel& model, std::span<const double> row) {
  return model.predict_proba(row);
}

class TreeLearner final : public Learner {
 public:
  explicit TreeLearner(TreeConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "tree"; }
  ModelPtr fit(const FitInput& in) const override {
    return std::make_shared<TreeModel>(tree_fit(in, cfg_));
  }

 private:
  TreeConfig cfg_;
};

}  // namespace sslbench
