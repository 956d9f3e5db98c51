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
#include <limits>
#include <span>
#include <vector>

#include "sslbench/core/dataset.hpp"

namespace sslbench {

// Numeric encoding for distances: nominal columns one-hot, continuous
// columns z-scored with mean/sd taken over `reference_rows`.
class DistanceEncoder {
 public:
  DistanceEncoder(const Dataset& data, std::span<const Index> reference_rows) : meta_(data.meta()) {
    const Index d = data.n_features();
    mean_.assign(d, 0.0);
    sd_.assign(d, 1.0);
    for (Index j = 0; j < d; ++j) {
      if (!meta_[j].is_continuous()) {
        width_ += meta_[j].arity;
        continue;
      }
      width_ += 1;
      double s = 0.0, ss = 0.0;
      for (Index i : reference_rows) s += data.at(i, j);
      const double n = static_cast<double>(reference_rows.size());
      mean_[j] = s / n;
      for (Index i : reference_rows) {
        const double dlt = data.at(i, j) - mean_[j];
        ss += dlt * dlt;
      }
      const double sd = n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      sd_[j] = sd > 0.0 ? sd : 1.0;
    }
  }

  Index width() const { return width_; }

  void encode(std::span<const double> row, std::vector<double>& out) const {
    out.assign(width_, 0.0);
    Index pos = 0;
    for (Index j = 0; j < meta_.size(); ++j) {
      if (meta_[j].is_continuous()) {
        out[pos++] = (row[j] - mean_[j]) / sd_[j];
      } else {
        out[pos + static_cast<Index>(row[j])] = 1.0;
        pos += meta_[j].arity;
      }
    }
  }

 private:
  std::vector<FeatureKind> meta_;
  std::vector<double> mean_, sd_;
  Index width_ = 0;
};

// Label of the nearest labeled row (Euclidean, encoded features) for each
// unlabeled row. Exact distance ties go to the lowest labeled row index.
inline std::vector<int> nn1_assign(const Dataset& data, std::span<const Index> labeled,
                                   std::span<const Index> unlabeled) {
  if (labeled.empty()) throw Error("nn1_assign: labeled set is empty");
  std::vector<Index> refs(labeled.begin(), labeled.end());
  std::sort(refs.begin(), refs.end());
  for (Index i : refs)
    if (!data.has_label(i)) throw Error("nn1_assign: labeled row without label");

  DistanceEncoder enc(data, refs);
  const Index w = enc.width();
  std::vector<double> ref_codes(refs.size() * w), code;
  for (Index r = 0; r < refs.size(); ++r) {
    enc.encode(data.row(refs[r]), code);
    std::copy(code.begin(), code.end(), ref_codes.begin() + static_cast<std::ptrdiff_t>(r * w));
  }

  std::vector<int> out;
  out.reserve(unlabeled.size());
  for (Index u : unlabeled) {
    enc.encode(data.row(u), code);
    double best = std::numeric_limits<double>::infinity();
    Index best_r = 0;
    for (Index r = 0; r < refs.size(); ++r) {
      const double* x = ref_codes.data() + r * w;
      double dist = 0.0;
      for (Index k = 0; k < w && dist < best; ++k) {
        const double t = x[k] - code[k];
        dist += t * t;
      }
      if (dist < best) {
        best = dist;
        best_r = r;
      }
    }
    out.push_back(data.label(refs[best_r]));
  }
  return out;
}

}  // namespace sslbench
