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
#include "softval/curves.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "softval/numeric.hpp"

namespace softval {

namespace {

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

namespace {

// Fields look like "column=value"; values compare numerically when both
// sides parse as numbers.
bool field_less(std::string_view af, std::string_view bf) {
  const std::size_t ae = af.find('=');
  const std::size_t be = bf.find('=');
  if (ae != std::string_view::npos && be != std::string_view::npos &&
      af.substr(0, ae) == bf.substr(0, be)) {
    af = af.substr(ae + 1);
    bf = bf.substr(be + 1);
  }
  const auto an = parse_number(af);
  const auto bn = parse_number(bf);
  if (an && bn && *an != *bn) return *an < *bn;
  return af < bf;
}

}  // namespace

bool group_key_less(const std::string& a, const std::string& b) {
  std::string_view av(a), bv(b);
  while (!av.empty() || !bv.empty()) {
    const std::size_t ai = av.find(',');
    const std::size_t bi = bv.find(',');
    std::string_view af = av.substr(0, ai);
    std::string_view bf = bv.substr(0, bi);
    if (af != bf) return field_less(af, bf);
    av = ai == std::string_view::npos ? std::string_view{} : av.substr(ai + 1);
    bv = bi == std::string_view::npos ? std::string_view{} : bv.substr(bi + 1);
  }
  return false;
}

GroupedPredictions GroupedPredictions::from_groups(std::vector<Group> groups) {
  if (groups.empty())
    fail(ErrorKind::shape_error, "need at least one group");
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) {
              return group_key_less(a.key, b.key);
            });
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Group& g = groups[i];
    if (i > 0 && groups[i - 1].key == g.key)
      fail(ErrorKind::shape_error, "duplicate group key '" + g.key + "'");
    if (g.ref.rows() != g.pred.rows())
      fail(ErrorKind::shape_mismatch,
           "group '" + g.key + "': reference and prediction row counts differ");
    if (g.ref.class_names() != g.pred.class_names() ||
        g.ref.class_names() != groups.front().ref.class_names())
      fail(ErrorKind::class_name_mismatch,
           "group '" + g.key + "': class names differ across groups");
  }
  return GroupedPredictions(std::move(groups));
}

std::size_t GroupedPredictions::total_samples() const noexcept {
  std::size_t n = 0;
  for (const Group& g : groups_) n += g.ref.rows();
  return n;
}

std::vector<CurvePoint> spec_sens_curve(const MembershipMatrix& ref,
                                        const MembershipMatrix& pred,
                                        std::size_t cls,
                                        std::vector<double> thresholds,
                                        SoftRowPolicy policy,
                                        ThresholdRule rule) {
  if (ref.rows() != pred.rows())
    fail(ErrorKind::shape_mismatch,
         "reference and prediction row counts differ");
  if (ref.class_names() != pred.class_names())
    fail(ErrorKind::class_name_mismatch,
         "reference and prediction class names differ");
  if (cls >= ref.classes())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");

  // Keep rows whose reference membership for cls is crisp.
  std::vector<double> pos_preds, neg_preds;
  for (std::size_t i = 0; i < ref.rows(); ++i) {
    const double r = ref.at(i, cls);
    if (r == 1.0) {
      pos_preds.push_back(pred.at(i, cls));
    } else if (r == 0.0) {
      neg_preds.push_back(pred.at(i, cls));
    } else if (policy == SoftRowPolicy::error) {
      fail(ErrorKind::soft_reference_error,
           "row " + std::to_string(i + 1) + " has soft reference membership " +
               std::to_string(r) + " for class '" + ref.class_names()[cls] +
               "'");
    }
  }
  if (pos_preds.empty() || neg_preds.empty())
    fail(ErrorKind::domain_error,
         "class '" + ref.class_names()[cls] +
             "' needs crisp positive and negative reference rows for a curve");

  if (thresholds.empty()) {
    thresholds.assign(pos_preds.begin(), pos_preds.end());
    thresholds.insert(thresholds.end(), neg_preds.begin(), neg_preds.end());
    thresholds.push_back(0.0);
    thresholds.push_back(1.0);
  }
  for (double t : thresholds)
    if (!(t >= 0.0 && t <= 1.0))
      fail(ErrorKind::domain_error, "thresholds must lie in [0, 1]");
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  std::sort(pos_preds.begin(), pos_preds.end());
  std::sort(neg_preds.begin(), neg_preds.end());
  const double n_pos = static_cast<double>(pos_preds.size());
  const double n_neg = static_cast<double>(neg_preds.size());

  // Positive prediction: membership > t (or >= t). Count via binary search
  // on the sorted membership lists.
  auto count_above = [rule](const std::vector<double>& xs, double t) {
    const auto it = rule == ThresholdRule::strict_greater
                        ? std::upper_bound(xs.begin(), xs.end(), t)
                        : std::lower_bound(xs.begin(), xs.end(), t);
    return static_cast<double>(xs.end() - it);
  };

  std::vector<CurvePoint> curve;
  curve.reserve(thresholds.size());
  for (double t : thresholds) {
    CurvePoint pt;
    pt.threshold = t;
    pt.sens = count_above(pos_preds, t) / n_pos;
    pt.spec = (n_neg - count_above(neg_preds, t)) / n_neg;
    curve.push_back(pt);
  }
  return curve;
}

GroupStatistics summarize_values(
    const std::vector<std::optional<double>>& values) {
  GroupStatistics out;
  std::vector<double> defined;
  defined.reserve(values.size());
  for (const auto& v : values) {
    if (v.has_value())
      defined.push_back(*v);
    else
      ++out.n_undefined;
  }
  out.n_defined = defined.size();
  if (defined.empty()) return out;
  out.mean = stats::mean(defined);
  out.p25 = stats::percentile(defined, 0.25);
  out.p50 = stats::percentile(defined, 0.50);
  out.p75 = stats::percentile(defined, 0.75);
  if (defined.size() >= 2) out.sd = stats::sample_sd(defined);
  return out;
}

GroupStatistics group_statistics(const GroupedPredictions& gp,
                                 MeasureKind kind, std::size_t cls,
                                 AndKind op) {
  std::vector<std::optional<double>> values;
  values.reserve(gp.size());
  for (const auto& g : gp.groups())
    values.push_back(measure(kind, g.ref, g.pred, cls, op).value);
  GroupStatistics out = summarize_values(values);
  if (out.n_defined < 2)
    fail(ErrorKind::too_few_groups,
         "need at least two groups with defined values, got " +
             std::to_string(out.n_defined));
  return out;
}

VarianceComparison variance_comparison(const GroupedPredictions& gp,
                                       std::size_t cls,
                                       const HardeningRule& rule,
                                       MeasureKind kind) {
  if (gp.size() < 2)
    fail(ErrorKind::too_few_groups,
         "need at least two groups, got " + std::to_string(gp.size()));

  std::vector<double> soft_values, crisp_values;
  for (const auto& g : gp.groups()) {
    const MeasureResult soft =
        measure(kind, g.ref, g.pred, cls, AndKind::product);
    const MeasureResult hard =
        measure(kind, g.ref, harden(g.pred, rule), cls, AndKind::product);
    if (soft.defined() && hard.defined()) {
      soft_values.push_back(*soft.value);
      crisp_values.push_back(*hard.value);
    }
  }
  if (soft_values.size() < 2)
    fail(ErrorKind::too_few_groups,
         "need at least two groups with defined values, got " +
             std::to_string(soft_values.size()));

  VarianceComparison out;
  out.n_groups = soft_values.size();
  out.var_soft = stats::sample_variance(soft_values);
  out.var_crisp = stats::sample_variance(crisp_values);
  if (out.var_soft > 0.0) out.inflation_ratio = out.var_crisp / out.var_soft;
  return out;
}

}  // namespace softval
