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

// Univariate and bivariate standard normal functions.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sslbench::normal {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

inline double pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
inline double cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Inverse Mills ratio phi(z) / Phi(z). For z far in the left tail both
// terms underflow, so the asymptotic expansion of Phi(z)/phi(z) is used.
inline double inverse_mills(double z) {
  if (z > -30.0) return pdf(z) / cdf(z);
  const double x = -z, x2 = x * x;
  // Phi(-x)/phi(x) ~ (1/x)(1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8)
  const double r = (1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2) +
                    105.0 / (x2 * x2 * x2 * x2)) / x;
  return 1.0 / r;
}

// log Phi(z) without underflow.
inline double log_cdf(double z) {
  if (z > -30.0) return std::log(cdf(z));
  return -0.5 * z * z - kLogSqrt2Pi - std::log(inverse_mills(z));
}

// Bivariate standard normal density with correlation rho.
inline double bvn_pdf(double a, double b, double rho) {
  const double one_minus = 1.0 - rho * rho;
  return std::exp(-(a * a - 2.0 * rho * a * b + b * b) / (2.0 * one_minus)) /
         (2.0 * kPi * std::sqrt(one_minus));
}

namespace detail {

struct GaussLegendre32 {
  // Positive half of the symmetric 32-point rule on [-1, 1].
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};

  GaussLegendre32() {
    constexpr int n = 32;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / dp;
        x -= step;
        if (std::fabs(step) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const GaussLegendre32& gauss_legendre_32() {
  static const GaussLegendre32 rule;
  return rule;
}

}  // namespace detail

// P(Z1 <= a, Z2 <= b) for standard bivariate normal with correlation rho.
//
// Phi2 = Phi(a)Phi(b) + integral_0^rho phi2(a, b; r) dr. Substituting
// r = sin(t) removes the 1/sqrt(1 - r^2) endpoint singularity:
//   integral_0^asin(rho) exp(-(a^2 - 2ab sin t + b^2) / (2 cos^2 t)) / (2 pi) dt,
// evaluated with 32-point Gauss-Legendre.
// |rho| = 1 uses the degenerate closed forms.
inline double bvn_cdf(double a, double b, double rho) {
  rho = std::clamp(rho, -1.0, 1.0);
  if (std::isinf(a) || std::isinf(b)) {
    if ((a < 0 && std::isinf(a)) || (b < 0 && std::isinf(b))) return 0.0;
    if (std::isinf(a)) return cdf(b);
    return cdf(a);
  }
  if (rho == 1.0) return cdf(std::min(a, b));
  if (rho == -1.0) return std::max(0.0, cdf(a) - cdf(-b));

  const double half = 0.5 * std::asin(rho);
  const double ab = a * b, ss = a * a + b * b;
  const auto& rule = detail::gauss_legendre_32();
  double integral = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    for (double sign : {-1.0, 1.0}) {
      const double t = half + sign * half * rule.nodes[k];
      const double s = std::sin(t), c2 = 1.0 - s * s;
      integral += rule.weights[k] * std::exp(-(ss - 2.0 * ab * s) / (2.0 * c2));
    }
  }
  integral *= half;
  const double value = cdf(a) * cdf(b) + integral / (2.0 * kPi);
  return std::clamp(value, 0.0, 1.0);
}

// Partial derivative of bvn_cdf with respect to its first argument.
inline double bvn_cdf_da(double a, double b, double rho) {
  return pdf(a) * cdf((b - rho * a) / std::sqrt(1.0 - rho * rho));
}

}  // namespace sslbench::normal
