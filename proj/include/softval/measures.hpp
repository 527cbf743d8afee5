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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "softval/membership.hpp"
#include "softval/operators.hpp"

namespace softval {

enum class MeasureKind { sens, spec, ppv, npv };

inline constexpr MeasureKind all_measure_kinds[] = {
    MeasureKind::sens, MeasureKind::spec, MeasureKind::ppv, MeasureKind::npv};

inline const char* to_string(MeasureKind m) noexcept {
  switch (m) {
    case MeasureKind::sens: return "sens";
    case MeasureKind::spec: return "spec";
    case MeasureKind::ppv: return "ppv";
    default: return "npv";
  }
}

MeasureKind measure_kind_from_string(std::string_view s);

/// How a measure value was obtained: one of the AND-operators, the same
/// ratio on hardened (crisp) predictions, or a residual-based 1-wMAE /
/// 1-wRMSE value. The enum order is the reporting order.
enum class Flavor { strong, product, weak, crisp, mae, rmse };

inline const char* to_string(Flavor f) noexcept {
  switch (f) {
    case Flavor::strong: return "strong";
    case Flavor::product: return "product";
    case Flavor::weak: return "weak";
    case Flavor::crisp: return "crisp";
    case Flavor::mae: return "mae";
    default: return "rmse";
  }
}

Flavor flavor_from_string(std::string_view s);

inline Flavor to_flavor(AndKind op) noexcept {
  switch (op) {
    case AndKind::strong: return Flavor::strong;
    case AndKind::product: return Flavor::product;
    default: return Flavor::weak;
  }
}

/// One per-class measure value. value is present iff denominator > 0;
/// undefined results stay undefined instead of turning into 0 or NaN.
struct MeasureResult {
  MeasureKind measure = MeasureKind::sens;
  Flavor flavor = Flavor::product;
  std::string class_name;
  std::optional<double> value;
  double denominator = 0.0;

  bool defined() const noexcept { return value.has_value(); }
};

/// Core ratio: sum of zf(op, ref, pred) over samples divided by the summed
/// reference memberships. All four ratio measures reduce to this function
/// under argument negation and/or swapping.
MeasureResult base_sens(std::span<const double> ref_col,
                        std::span<const double> pred_col, AndKind op);

/// Sequential reference implementation of base_sens kept for tests and
/// benchmarks.
MeasureResult base_sens_serial(std::span<const double> ref_col,
                               std::span<const double> pred_col, AndKind op);

/// Ratio measure for class cls. spec negates both arguments, ppv swaps them,
/// npv does both. Denominators are the summed first-argument memberships.
MeasureResult measure(MeasureKind kind, const MembershipMatrix& ref,
                      const MembershipMatrix& pred, std::size_t cls,
                      AndKind op);

MeasureResult sens(const MembershipMatrix& ref, const MembershipMatrix& pred,
                   std::size_t cls, AndKind op);
MeasureResult spec(const MembershipMatrix& ref, const MembershipMatrix& pred,
                   std::size_t cls, AndKind op);
MeasureResult ppv(const MembershipMatrix& ref, const MembershipMatrix& pred,
                  std::size_t cls, AndKind op);
MeasureResult npv(const MembershipMatrix& ref, const MembershipMatrix& pred,
                  std::size_t cls, AndKind op);

/// Attainable ceiling for the given reference labels: the measure when the
/// prediction reproduces the reference.
MeasureResult ideal(MeasureKind kind, const MembershipMatrix& ref,
                    std::size_t cls, AndKind op);

/// Denominator-weighted mean over disjoint groups. Parts must agree on
/// (measure, flavor, class); groups with zero denominator contribute
/// nothing, and the result is undefined when every denominator is zero.
MeasureResult weighted_average(std::span<const MeasureResult> parts);

}  // namespace softval
