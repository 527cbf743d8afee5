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
#include "softval/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace softval::oracle {

namespace {

// Independent operator transcriptions; deliberately not routed through the
// library kernels.
double zf_plain(AndKind op, double r, double p) {
  switch (op) {
    case AndKind::strong: return std::max(r + p - 1.0, 0.0);
    case AndKind::product: return r * p;
    default: return std::min(r, p);
  }
}

void check_sample(const DiscretizedSample& s, std::size_t cls) {
  if (s.units < 1) fail(ErrorKind::shape_error, "units must be >= 1");
  if (s.units > max_units)
    fail(ErrorKind::too_large,
         "enumeration is capped at " + std::to_string(max_units) + " units");
  if (s.ref_counts.size() != s.pred_counts.size())
    fail(ErrorKind::shape_error, "ref and pred count vectors differ in size");
  if (cls >= s.ref_counts.size())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");
  for (int c : s.ref_counts)
    if (c < 0 || c > s.units)
      fail(ErrorKind::shape_error, "counts must lie in [0, units]");
  for (int c : s.pred_counts)
    if (c < 0 || c > s.units)
      fail(ErrorKind::shape_error, "counts must lie in [0, units]");
}

std::vector<std::uint32_t> masks_with_popcount(int units, int count) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << units;
  for (std::uint32_t m = 0; m < limit; ++m)
    if (std::popcount(m) == count) out.push_back(m);
  return out;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) fail(ErrorKind::domain_error, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool operator<(const Rational& a, const Rational& b) noexcept {
  return static_cast<__int128>(a.num) * b.den <
         static_cast<__int128>(b.num) * a.den;
}

Rational zf_rational(AndKind op, int a, int b, int units) {
  if (units < 1) fail(ErrorKind::shape_error, "units must be >= 1");
  if (a < 0 || a > units || b < 0 || b > units)
    fail(ErrorKind::domain_error, "counts must lie in [0, units]");
  switch (op) {
    case AndKind::strong:
      return Rational(std::max(a + b - units, 0), units);
    case AndKind::product:
      return Rational(static_cast<std::int64_t>(a) * b,
                      static_cast<std::int64_t>(units) * units);
    default:
      return Rational(std::min(a, b), units);
  }
}

OverlapExtremes overlap_extremes(const DiscretizedSample& s, std::size_t cls) {
  check_sample(s, cls);
  const int a = s.ref_counts[cls];
  const int b = s.pred_counts[cls];
  const auto ref_masks = masks_with_popcount(s.units, a);
  const auto pred_masks = masks_with_popcount(s.units, b);

  int min_cells = s.units + 1;
  int max_cells = -1;
  for (std::uint32_t rm : ref_masks)
    for (std::uint32_t pm : pred_masks) {
      const int overlap = std::popcount(rm & pm);
      min_cells = std::min(min_cells, overlap);
      max_cells = std::max(max_cells, overlap);
    }
  return {Rational(min_cells, s.units), Rational(max_cells, s.units)};
}

Rational overlap_expectation(const DiscretizedSample& s, std::size_t cls) {
  check_sample(s, cls);
  const int a = s.ref_counts[cls];
  const int b = s.pred_counts[cls];
  const auto ref_masks = masks_with_popcount(s.units, a);
  const auto pred_masks = masks_with_popcount(s.units, b);

  std::int64_t total = 0;
  for (std::uint32_t rm : ref_masks)
    for (std::uint32_t pm : pred_masks) total += std::popcount(rm & pm);
  const std::int64_t pairs =
      static_cast<std::int64_t>(ref_masks.size()) *
      static_cast<std::int64_t>(pred_masks.size());
  return Rational(total, pairs * s.units);
}

std::optional<double> measure_by_definition(MeasureKind kind,
                                            const MembershipMatrix& ref,
                                            const MembershipMatrix& pred,
                                            std::size_t cls, AndKind op) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.rows(); ++i) {
    const double r = ref.at(i, cls);
    const double p = pred.at(i, cls);
    switch (kind) {
      case MeasureKind::sens:
        num += zf_plain(op, r, p);
        den += r;
        break;
      case MeasureKind::spec:
        num += zf_plain(op, 1.0 - r, 1.0 - p);
        den += 1.0 - r;
        break;
      case MeasureKind::ppv:
        num += zf_plain(op, r, p);  // the same diagonal confusion cell
        den += p;
        break;
      case MeasureKind::npv:
        num += zf_plain(op, 1.0 - r, 1.0 - p);
        den += 1.0 - p;
        break;
    }
  }
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

std::optional<double> regression_measure_by_definition(
    MeasureKind kind, RegKind reg, const MembershipMatrix& ref,
    const MembershipMatrix& pred, std::size_t cls) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ref.rows(); ++i) {
    const double r = ref.at(i, cls);
    const double p = pred.at(i, cls);
    double w = 0.0;
    switch (kind) {
      case MeasureKind::sens: w = r; break;
      case MeasureKind::spec: w = 1.0 - r; break;
      case MeasureKind::ppv: w = p; break;
      case MeasureKind::npv: w = 1.0 - p; break;
    }
    const double e = std::abs(p - r);
    num += reg == RegKind::mae ? w * e : w * e * e;
    den += w;
  }
  if (!(den > 0.0)) return std::nullopt;
  return reg == RegKind::mae ? 1.0 - num / den : 1.0 - std::sqrt(num / den);
}

std::optional<double> crisp_ratio(MeasureKind kind,
                                  const MembershipMatrix& ref,
                                  const MembershipMatrix& pred,
                                  std::size_t cls) {
  if (!ref.crisp() || !pred.crisp())
    fail(ErrorKind::domain_error, "crisp ratios need crisp matrices");
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < ref.rows(); ++i) {
    const bool r = ref.at(i, cls) == 1.0;
    const bool p = pred.at(i, cls) == 1.0;
    if (r && p) ++tp;
    else if (!r && p) ++fp;
    else if (r && !p) ++fn;
    else ++tn;
  }
  std::int64_t num = 0, den = 0;
  switch (kind) {
    case MeasureKind::sens: num = tp; den = tp + fn; break;
    case MeasureKind::spec: num = tn; den = tn + fp; break;
    case MeasureKind::ppv: num = tp; den = tp + fp; break;
    case MeasureKind::npv: num = tn; den = tn + fn; break;
  }
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

// Scan all but one coordinate over {0, step, 2*step, ..., cap} (cap always
// included) and solve the remaining coordinate from the fixed weighted sum.
void grid_scan(std::span<const double> caps, std::span<const double> weights,
               std::size_t solved, std::size_t dim, std::vector<double>& devs,
               double budget_left, double sq_so_far, double& best_sq) {
  if (dim == caps.size()) {
    const double d = budget_left / weights[solved];
    const double slack = 1e-9;
    if (d < -slack || d > caps[solved] + slack) return;
    const double dc = std::clamp(d, 0.0, caps[solved]);
    const double sq = sq_so_far + weights[solved] * dc * dc;
    best_sq = std::max(best_sq, sq);
    return;
  }
  if (dim == solved) {
    grid_scan(caps, weights, solved, dim + 1, devs, budget_left, sq_so_far,
              best_sq);
    return;
  }
  const double cap = caps[dim];
  const double w = weights[dim];
  const double step = devs[dim];  // reused as the step for this dimension
  for (double d = 0.0;; d += step) {
    const bool last = d >= cap;
    const double dv = last ? cap : d;
    grid_scan(caps, weights, solved, dim + 1, devs,
              budget_left - w * dv, sq_so_far + w * dv * dv, best_sq);
    if (last) break;
  }
}

}  // namespace

std::optional<double> grid_max_rmse(std::span<const double> caps,
                                    std::span<const double> weights,
                                    double wmae, double step) {
  if (caps.size() != weights.size() || caps.empty())
    fail(ErrorKind::shape_error, "caps and weights must match and be non-empty");
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;

  double best_sq = -1.0;
  std::vector<double> steps(caps.size(), step);
  for (std::size_t solved = 0; solved < caps.size(); ++solved) {
    if (weights[solved] <= 0.0) continue;
    grid_scan(caps, weights, solved, 0, steps, wmae * total_weight, 0.0,
              best_sq);
  }
  if (best_sq < 0.0) return std::nullopt;
  return std::sqrt(best_sq / total_weight);
}

}  // namespace softval::oracle
