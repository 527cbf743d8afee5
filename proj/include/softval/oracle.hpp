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

// Brute-force reference implementations used to validate the library.
// Everything here recomputes results from first principles with plain loops
// and exact integer/rational arithmetic; nothing routes through the
// optimized kernels it is meant to check.

#include <cstdint>
#include <optional>
#include <vector>

#include "softval/measures.hpp"
#include "softval/membership.hpp"
#include "softval/operators.hpp"
#include "softval/regression.hpp"

namespace softval::oracle {

/// Exact fraction with a normalized sign and reduced terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double to_double() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) noexcept;
};

/// Exact evaluation of the three operators on a/units and b/units.
Rational zf_rational(AndKind op, int a, int b, int units);

/// A membership pair discretized into `units` indivisible cells:
/// ref_counts[g] of them belong to class g in the reference,
/// pred_counts[g] in the prediction. Memberships are counts / units.
struct DiscretizedSample {
  int units = 1;
  std::vector<int> ref_counts;
  std::vector<int> pred_counts;
};

inline constexpr int max_units = 16;  // full enumeration stays feasible

struct OverlapExtremes {
  Rational min_overlap;
  Rational max_overlap;
};

/// Enumerates every placement of the reference-positive and
/// prediction-positive cell sets and reports the smallest and largest
/// fraction of cells positive in both.
OverlapExtremes overlap_extremes(const DiscretizedSample& s, std::size_t cls);

/// Exact mean of the co-positive fraction over all placements, i.e. the
/// expected overlap under uniformly random mixing.
Rational overlap_expectation(const DiscretizedSample& s, std::size_t cls);

/// Plain-loop transcription of the ratio measures: numerator and
/// denominator summed naively, spec/ppv/npv written out directly instead of
/// reusing the sens machinery.
std::optional<double> measure_by_definition(MeasureKind kind,
                                            const MembershipMatrix& ref,
                                            const MembershipMatrix& pred,
                                            std::size_t cls, AndKind op);

/// Plain-loop transcription of the residual-based measures.
std::optional<double> regression_measure_by_definition(
    MeasureKind kind, RegKind reg, const MembershipMatrix& ref,
    const MembershipMatrix& pred, std::size_t cls);

/// Classical crisp ratio from integer confusion counts; both matrices must
/// be crisp. Undefined (empty denominator) yields nullopt.
std::optional<double> crisp_ratio(MeasureKind kind,
                                  const MembershipMatrix& ref,
                                  const MembershipMatrix& pred,
                                  std::size_t cls);

/// Exhaustive maximum of sum(w*d^2)/sum(w) subject to
/// sum(w*d)/sum(w) = wmae and 0 <= d_i <= caps_i, scanning all but one
/// deviation on a uniform grid (grid endpoints included) and solving the
/// last one exactly. Returns the max RMSE found, or nullopt when the plane
/// does not intersect the box.
std::optional<double> grid_max_rmse(std::span<const double> caps,
                                    std::span<const double> weights,
                                    double wmae, double step);

}  // namespace softval::oracle
