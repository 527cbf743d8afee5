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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "softval/measures.hpp"
#include "softval/membership.hpp"

namespace softval {

enum class RegKind { mae, rmse };

inline const char* to_string(RegKind k) noexcept {
  return k == RegKind::mae ? "mae" : "rmse";
}

RegKind reg_kind_from_string(std::string_view s);

inline Flavor to_flavor(RegKind k) noexcept {
  return k == RegKind::mae ? Flavor::mae : Flavor::rmse;
}

/// Residual confusion counts: the product-operator counts of the observed
/// prediction minus those of an ideal prediction that reproduces the
/// reference. Per-sample residuals (pred - ref per class) are retained for
/// the weighted error measures. For closed-world data the row sums of the
/// deltas vanish: every underestimation of a class is an overestimation of
/// the others.
struct ResidualMatrix {
  std::vector<double> deltas;     // n_g x n_g, row-major
  std::vector<double> residuals;  // n x n_g, pred - ref
  std::vector<std::string> class_names;
  std::size_t n_samples = 0;

  double delta(std::size_t ref_cls, std::size_t pred_cls) const noexcept {
    return deltas[ref_cls * class_names.size() + pred_cls];
  }
  double residual(std::size_t row, std::size_t cls) const noexcept {
    return residuals[row * class_names.size() + cls];
  }
};

ResidualMatrix residual_matrix(const MembershipMatrix& ref,
                               const MembershipMatrix& pred);

/// 1 - weighted MAE (or RMSE) of the per-class residual |pred - ref|.
/// Weights are the reference memberships for sens, their complement for
/// spec, and the predicted memberships (or complement) for ppv (npv).
MeasureResult regression_measure(MeasureKind kind, RegKind reg,
                                 const MembershipMatrix& ref,
                                 const MembershipMatrix& pred,
                                 std::size_t cls);

MeasureResult sens_mae(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls);
MeasureResult spec_mae(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls);
MeasureResult ppv_mae(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      std::size_t cls);
MeasureResult npv_mae(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      std::size_t cls);
MeasureResult sens_rmse(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, std::size_t cls);
MeasureResult spec_rmse(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, std::size_t cls);
MeasureResult ppv_rmse(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls);
MeasureResult npv_rmse(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls);

struct RmseBounds {
  double rmse_min = 0.0;
  double rmse_max = 0.0;
};

/// Feasible wRMSE range for crisp references at a given wMAE:
/// wMAE <= wRMSE <= sqrt(wMAE). These are the classical bounds over all
/// datasets; per-sample deviations are capped at 1.
RmseBounds mae_rmse_bounds(double wmae);

/// Feasible wRMSE range at a given wMAE when each sample's deviation is
/// capped (soft references cap |pred - ref| at max(r, 1 - r)). The minimum
/// equalizes deviations subject to the caps; the maximum is the exact
/// optimum over the cap box intersected with the fixed-wMAE plane, which is
/// attained with at most one sample strictly inside its cap. Above
/// rmse_exact_limit samples a tight upper bound is reported instead of the
/// exact maximum.
RmseBounds mae_rmse_bounds(double wmae, std::span<const double> caps,
                           std::span<const double> weights);

/// Sensitivity-flavored envelope for a reference column: weights are the
/// memberships, caps are max(r, 1 - r).
RmseBounds sens_rmse_bounds(double wmae, std::span<const double> ref_col);

inline constexpr std::size_t rmse_exact_limit = 24;

/// Sum over classes of the per-class mean absolute residual (mae), or the
/// square root of the summed per-class mean squared residuals (rmse).
/// Bounds: mae <= 2 and rmse <= sqrt(2) when both matrices are closed-world,
/// mae <= n_g and rmse <= sqrt(n_g) otherwise. normalize divides by the
/// applicable bound.
double interclass_error(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, RegKind kind,
                        bool normalize = false);

double interclass_error_bound(World world, RegKind kind,
                              std::size_t n_classes);

}  // namespace softval
