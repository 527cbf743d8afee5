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
#include "softval/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "softval/confusion.hpp"
#include "softval/numeric.hpp"
#include "softval/parallel.hpp"

namespace softval {

namespace {

void check_pair(const MembershipMatrix& ref, const MembershipMatrix& pred,
                std::size_t cls) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::shape_mismatch,
         "reference has " + std::to_string(ref.rows()) +
             " rows, prediction has " + std::to_string(pred.rows()));
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");
  if (cls >= ref.classes())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");
}

struct ErrorPartial {
  NeumaierSum w_abs;  // sum of weight * |residual|
  NeumaierSum w_sq;   // sum of weight * residual^2
  NeumaierSum w;      // sum of weights
};

}  // namespace

RegKind reg_kind_from_string(std::string_view s) {
  if (s == "mae") return RegKind::mae;
  if (s == "rmse") return RegKind::rmse;
  fail(ErrorKind::domain_error,
       "unknown regression measure '" + std::string(s) + "'");
}

ResidualMatrix residual_matrix(const MembershipMatrix& ref,
                               const MembershipMatrix& pred) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::shape_mismatch,
         "reference has " + std::to_string(ref.rows()) +
             " rows, prediction has " + std::to_string(pred.rows()));
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");

  const ConfusionMatrix observed = build(ref, pred, AndKind::product);
  const ConfusionMatrix reproduced = build(ref, ref, AndKind::product);
  const std::size_t ng = ref.classes();

  ResidualMatrix rm;
  rm.class_names = ref.class_names();
  rm.n_samples = ref.rows();
  rm.deltas.resize(ng * ng);
  for (std::size_t c = 0; c < ng * ng; ++c)
    rm.deltas[c] = observed.counts()[c] - reproduced.counts()[c];

  rm.residuals.resize(ref.rows() * ng);
  for (std::size_t i = 0; i < ref.rows(); ++i)
    for (std::size_t g = 0; g < ng; ++g)
      rm.residuals[i * ng + g] = pred.at(i, g) - ref.at(i, g);
  return rm;
}

MeasureResult regression_measure(MeasureKind kind, RegKind reg,
                                 const MembershipMatrix& ref,
                                 const MembershipMatrix& pred,
                                 std::size_t cls) {
  check_pair(ref, pred, cls);
  const std::size_t ng = ref.classes();
  const double* rbase = ref.data().data() + cls;
  const double* pbase = pred.data().data() + cls;

  auto weight_at = [&](std::size_t i) noexcept {
    switch (kind) {
      case MeasureKind::sens: return rbase[i * ng];
      case MeasureKind::spec: return 1.0 - rbase[i * ng];
      case MeasureKind::ppv: return pbase[i * ng];
      default: return 1.0 - pbase[i * ng];
    }
  };

  auto partials = par::map_blocks<ErrorPartial>(
      ref.rows(),
      [&](std::size_t, std::size_t lo, std::size_t hi, ErrorPartial& out) {
        for (std::size_t i = lo; i < hi; ++i) {
          const double w = weight_at(i);
          const double e = pbase[i * ng] - rbase[i * ng];
          out.w_abs.add(w * std::abs(e));
          out.w_sq.add(w * e * e);
          out.w.add(w);
        }
      });
  ErrorPartial total;
  for (const ErrorPartial& part : partials) {
    total.w_abs.merge(part.w_abs);
    total.w_sq.merge(part.w_sq);
    total.w.merge(part.w);
  }

  MeasureResult res;
  res.measure = kind;
  res.flavor = to_flavor(reg);
  res.class_name = ref.class_names()[cls];
  res.denominator = total.w.value();
  if (res.denominator > 0.0) {
    if (reg == RegKind::mae)
      res.value = 1.0 - total.w_abs.value() / res.denominator;
    else
      res.value = 1.0 - std::sqrt(total.w_sq.value() / res.denominator);
  }
  return res;
}

MeasureResult sens_mae(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::sens, RegKind::mae, ref, pred, cls);
}
MeasureResult spec_mae(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::spec, RegKind::mae, ref, pred, cls);
}
MeasureResult ppv_mae(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      std::size_t cls) {
  return regression_measure(MeasureKind::ppv, RegKind::mae, ref, pred, cls);
}
MeasureResult npv_mae(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      std::size_t cls) {
  return regression_measure(MeasureKind::npv, RegKind::mae, ref, pred, cls);
}
MeasureResult sens_rmse(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::sens, RegKind::rmse, ref, pred, cls);
}
MeasureResult spec_rmse(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::spec, RegKind::rmse, ref, pred, cls);
}
MeasureResult ppv_rmse(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::ppv, RegKind::rmse, ref, pred, cls);
}
MeasureResult npv_rmse(const MembershipMatrix& ref,
                       const MembershipMatrix& pred, std::size_t cls) {
  return regression_measure(MeasureKind::npv, RegKind::rmse, ref, pred, cls);
}

RmseBounds mae_rmse_bounds(double wmae) {
  if (!(wmae >= 0.0 && wmae <= 1.0))
    fail(ErrorKind::infeasible_mae,
         "crisp-reference wMAE must lie in [0, 1], got " +
             std::to_string(wmae));
  return {wmae, std::sqrt(wmae)};
}

namespace {

struct CapItem {
  double cap;
  double weight;
  double capacity;  // weight * cap: the wMAE mass this sample can hold
};

// Exact maximum of sum(w * d^2) subject to sum(w * d) = budget, 0 <= d <= cap.
// The optimum puts every sample at 0 or at its cap except at most one; the
// search enumerates fill/skip decisions with an upper-bound prune and closes
// each leaf with the best single fractional sample among the skipped ones.
class MaxSquaredSearch {
 public:
  MaxSquaredSearch(std::vector<CapItem> items, double budget)
      : items_(std::move(items)), budget_(budget) {
    std::sort(items_.begin(), items_.end(),
              [](const CapItem& a, const CapItem& b) { return a.cap > b.cap; });
    skipped_.reserve(items_.size());
  }

  double run() {
    best_ = -1.0;
    dfs(0, budget_, 0.0, 0.0);
    return best_;
  }

 private:
  void close_leaf(double rem, double value) {
    const double slack = 1e-12 * std::max(1.0, budget_);
    if (rem <= slack) {
      best_ = std::max(best_, value);
      return;
    }
    // The leftover mass goes to one skipped sample; the smallest weight that
    // can still hold it yields the largest deviation.
    double best_partial = -1.0;
    for (std::size_t idx : skipped_) {
      const CapItem& it = items_[idx];
      if (it.capacity + slack >= rem)
        best_partial = std::max(best_partial, rem * rem / it.weight);
    }
    if (best_partial >= 0.0) best_ = std::max(best_, value + best_partial);
  }

  void dfs(std::size_t idx, double rem, double value, double max_skipped_cap) {
    if (idx == items_.size()) {
      close_leaf(rem, value);
      return;
    }
    const double density = std::max(items_[idx].cap, max_skipped_cap);
    if (value + rem * density <= best_) return;  // cannot beat the incumbent

    const CapItem& it = items_[idx];
    const double slack = 1e-12 * std::max(1.0, budget_);
    if (it.capacity <= rem + slack) {
      // fill this sample to its cap
      dfs(idx + 1, std::max(0.0, rem - it.capacity),
          value + it.capacity * it.cap, max_skipped_cap);
    }
    // leave it at zero (or make it the one fractional sample at the leaf)
    skipped_.push_back(idx);
    dfs(idx + 1, rem, value, std::max(max_skipped_cap, it.cap));
    skipped_.pop_back();
  }

  std::vector<CapItem> items_;
  double budget_;
  double best_ = -1.0;
  std::vector<std::size_t> skipped_;
};

// Upper bound by fractional packing in decreasing cap order; the gap to the
// exact maximum is at most one sample's capacity times its cap.
double max_squared_upper_bound(std::vector<CapItem> items, double budget) {
  std::sort(items.begin(), items.end(),
            [](const CapItem& a, const CapItem& b) { return a.cap > b.cap; });
  double rem = budget;
  double value = 0.0;
  for (const CapItem& it : items) {
    if (rem <= 0.0) break;
    const double mass = std::min(rem, it.capacity);
    value += mass * it.cap;
    rem -= mass;
  }
  return value;
}

// Minimum of sum(w * d^2) at fixed sum(w * d): equalize deviations at a
// common level, clamping samples whose caps are below it.
double min_squared(std::vector<CapItem> items, double budget) {
  std::sort(items.begin(), items.end(),
            [](const CapItem& a, const CapItem& b) { return a.cap < b.cap; });
  double clamped_mass = 0.0;   // sum w*m over samples pinned at their caps
  double clamped_value = 0.0;  // sum w*m^2 over the same samples
  double free_weight = 0.0;
  for (const CapItem& it : items) free_weight += it.weight;

  std::size_t k = 0;
  double level = 0.0;
  while (true) {
    level = free_weight > 0.0 ? (budget - clamped_mass) / free_weight
                              : items.empty() ? 0.0 : items.back().cap;
    if (k >= items.size() || level <= items[k].cap || free_weight <= 0.0) break;
    clamped_mass += items[k].capacity;
    clamped_value += items[k].capacity * items[k].cap;
    free_weight -= items[k].weight;
    ++k;
  }
  level = std::max(0.0, std::min(level, items.empty() ? 0.0 : items.back().cap));
  return clamped_value + level * level * free_weight;
}

}  // namespace

RmseBounds mae_rmse_bounds(double wmae, std::span<const double> caps,
                           std::span<const double> weights) {
  if (caps.size() != weights.size())
    fail(ErrorKind::shape_mismatch, "caps and weights differ in length");
  if (caps.empty())
    fail(ErrorKind::shape_mismatch, "need at least one sample");

  double total_weight = 0.0;
  double max_mass = 0.0;
  std::vector<CapItem> items;
  items.reserve(caps.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (!(caps[i] >= 0.0 && caps[i] <= 1.0))
      fail(ErrorKind::domain_error, "deviation caps must lie in [0, 1]");
    if (!(weights[i] >= 0.0))
      fail(ErrorKind::domain_error, "weights must be non-negative");
    total_weight += weights[i];
    if (weights[i] > 0.0 && caps[i] > 0.0) {
      items.push_back({caps[i], weights[i], weights[i] * caps[i]});
      max_mass += weights[i] * caps[i];
    }
  }
  if (!(total_weight > 0.0))
    fail(ErrorKind::domain_error, "total weight must be positive");

  const double budget = wmae * total_weight;
  const double slack = 1e-9 * std::max(1.0, max_mass);
  if (wmae < 0.0 || budget > max_mass + slack)
    fail(ErrorKind::infeasible_mae,
         "wMAE " + std::to_string(wmae) +
             " exceeds the weighted mean of the deviation caps");
  const double clipped_budget = std::min(budget, max_mass);
  if (clipped_budget <= 0.0) return {0.0, 0.0};

  const double s2_min = min_squared(items, clipped_budget);
  double s2_max;
  if (items.size() <= rmse_exact_limit)
    s2_max = MaxSquaredSearch(items, clipped_budget).run();
  else
    s2_max = max_squared_upper_bound(items, clipped_budget);
  s2_max = std::max(s2_max, s2_min);

  return {std::sqrt(std::max(0.0, s2_min) / total_weight),
          std::sqrt(std::max(0.0, s2_max) / total_weight)};
}

RmseBounds sens_rmse_bounds(double wmae, std::span<const double> ref_col) {
  std::vector<double> caps(ref_col.size());
  for (std::size_t i = 0; i < ref_col.size(); ++i) {
    detail::check_membership(ref_col[i], "reference");
    caps[i] = std::max(ref_col[i], 1.0 - ref_col[i]);
  }
  return mae_rmse_bounds(wmae, caps,
                         std::span<const double>(ref_col.data(), ref_col.size()));
}

double interclass_error_bound(World world, RegKind kind,
                              std::size_t n_classes) {
  const double b =
      world == World::closed ? 2.0 : static_cast<double>(n_classes);
  return kind == RegKind::mae ? b : std::sqrt(b);
}

double interclass_error(const MembershipMatrix& ref,
                        const MembershipMatrix& pred, RegKind kind,
                        bool normalize) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::shape_mismatch,
         "reference has " + std::to_string(ref.rows()) +
             " rows, prediction has " + std::to_string(pred.rows()));
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");

  const std::size_t ng = ref.classes();
  struct Partial {
    std::vector<NeumaierSum> abs_sum;
    std::vector<NeumaierSum> sq_sum;
  };
  auto partials = par::map_blocks<Partial>(
      ref.rows(),
      [&](std::size_t, std::size_t lo, std::size_t hi, Partial& out) {
        out.abs_sum.resize(ng);
        out.sq_sum.resize(ng);
        for (std::size_t i = lo; i < hi; ++i)
          for (std::size_t g = 0; g < ng; ++g) {
            const double e = pred.at(i, g) - ref.at(i, g);
            out.abs_sum[g].add(std::abs(e));
            out.sq_sum[g].add(e * e);
          }
      });
  std::vector<NeumaierSum> abs_total(ng), sq_total(ng);
  for (const Partial& part : partials)
    for (std::size_t g = 0; g < ng; ++g) {
      abs_total[g].merge(part.abs_sum[g]);
      sq_total[g].merge(part.sq_sum[g]);
    }

  const double n = static_cast<double>(ref.rows());
  double value;
  if (kind == RegKind::mae) {
    NeumaierSum acc;
    for (std::size_t g = 0; g < ng; ++g) acc.add(abs_total[g].value() / n);
    value = acc.value();
  } else {
    NeumaierSum acc;
    for (std::size_t g = 0; g < ng; ++g) acc.add(sq_total[g].value() / n);
    value = std::sqrt(std::max(0.0, acc.value()));
  }
  if (normalize) {
    const World world = (ref.world() == World::closed &&
                         pred.world() == World::closed)
                            ? World::closed
                            : World::open;
    value /= interclass_error_bound(world, kind, ng);
  }
  return value;
}

}  // namespace softval
