/*
 * Copyright (c) 2026, the softval authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
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
#include <cstddef>
#include <span>
#include <vector>

namespace softval {

// Kahan-Babuska (Neumaier) compensated accumulator. Merging block partials
// in a fixed order reproduces a sequential compensated sum to ~1e-16 relative.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  void merge(const NeumaierSum& other) noexcept {
    add(other.sum);
    add(other.comp);
  }

  double value() const noexcept { return sum + comp; }
};

namespace stats {

inline double mean(std::span<const double> xs) {
  NeumaierSum acc;
  for (double x : xs) acc.add(x);
  return acc.value() / static_cast<double>(xs.size());
}

// Sample variance with n-1 denominator; requires xs.size() >= 2.
inline double sample_variance(std::span<const double> xs) {
  const double m = mean(xs);
  NeumaierSum acc;
  for (double x : xs) acc.add((x - m) * (x - m));
  return acc.value() / static_cast<double>(xs.size() - 1);
}

inline double sample_sd(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs));
}

// Linear interpolation between order statistics, q in [0, 1].
inline double percentile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  if (xs.size() == 1) return xs.front();
  const double h = q * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= xs.size()) return xs.back();
  const double frac = h - static_cast<double>(lo);
  return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

}  // namespace stats

}  // namespace softval
