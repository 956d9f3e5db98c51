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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sslbench {

// All recoverable failures (bad input, degenerate data) surface as Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by probit estimators when the classes are (quasi-)separable.
class SeparationError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;
using Index = std::size_t;

namespace seeds {

// SplitMix64 finalizer. Stable across platforms and releases.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine(std::uint64_t seed, std::uint64_t value) {
  return mix(seed ^ mix(value));
}

// FNV-1a over the bytes of `text`.
constexpr std::uint64_t hash_text(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive(std::uint64_t seed, std::string_view tag) {
  return combine(seed, hash_text(tag));
}

}  // namespace seeds

// Uniform double in [0, 1) from the top 53 bits of one engine draw. Used
// wherever the exact draw sequence matters (weighted resampling).
inline double unit_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws `count` indices with replacement, P(i) proportional to weights[i].
// Inverse-CDF over the running sum, one unit_uniform draw per sample.
inline std::vector<Index> weighted_sample(Rng& rng, const std::vector<double>& weights,
                                          Index count) {
  std::vector<double> cumulative(weights.size());
  double total = 0.0;
  for (Index i = 0; i < weights.size(); ++i) {
    total += weights[i];
    cumulative[i] = total;
  }
  if (weights.empty() || !(total > 0.0)) throw Error("weighted_sample: no positive weight");
  std::vector<Index> out;
  out.reserve(count);
  for (Index s = 0; s < count; ++s) {
    const double u = unit_uniform(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    Index pick = it == cumulative.end() ? weights.size() - 1
                                        : static_cast<Index>(it - cumulative.begin());
    while (weights[pick] <= 0.0 && pick > 0) --pick;
    out.push_back(pick);
  }
  return out;
}

}  // namespace sslbench
