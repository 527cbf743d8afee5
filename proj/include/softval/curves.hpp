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
#include <optional>
#include <string>
#include <vector>

#include "softval/measures.hpp"
#include "softval/membership.hpp"
#include "softval/regression.hpp"

namespace softval {

/// One (reference, prediction) pair per group key (e.g. a cross-validation
/// iteration or fold). Groups are kept sorted by key; all groups share the
/// same class names.
class GroupedPredictions {
 public:
  struct Group {
    std::string key;
    MembershipMatrix ref;
    MembershipMatrix pred;
  };

  static GroupedPredictions from_groups(std::vector<Group> groups);

  std::size_t size() const noexcept { return groups_.size(); }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  const Group& group(std::size_t i) const noexcept { return groups_[i]; }
  const std::vector<std::string>& class_names() const noexcept {
    return groups_.front().ref.class_names();
  }
  std::size_t total_samples() const noexcept;

 private:
  explicit GroupedPredictions(std::vector<Group> groups)
      : groups_(std::move(groups)) {}
  std::vector<Group> groups_;
};

/// Orders group keys numerically when both sides parse as numbers,
/// lexicographically otherwise. Multi-column keys compare fieldwise.
bool group_key_less(const std::string& a, const std::string& b);

struct CurvePoint {
  double threshold = 0.0;
  double spec = 0.0;
  double sens = 0.0;
};

enum class SoftRowPolicy { error, exclude };
enum class ThresholdRule { strict_greater, greater_equal };

/// Specificity-sensitivity pairs for class cls while sweeping the hardening
/// threshold. Rows must be crisp in the cls reference column; soft rows
/// either abort (SoftRowPolicy::error) or are dropped. With an empty
/// threshold list the sweep uses the sorted unique predicted memberships of
/// cls, extended by 0 and 1 so the curve reaches (spec 0, sens 1) and
/// (spec 1, sens 0). A prediction counts as positive when its membership
/// exceeds the threshold (strictly, by default).
std::vector<CurvePoint> spec_sens_curve(
    const MembershipMatrix& ref, const MembershipMatrix& pred, std::size_t cls,
    std::vector<double> thresholds = {},
    SoftRowPolicy policy = SoftRowPolicy::error,
    ThresholdRule rule = ThresholdRule::strict_greater);

struct GroupStatistics {
  std::optional<double> mean;  // over groups with a defined value
  std::optional<double> sd;    // sample SD (n-1), needs >= 2 defined groups
  std::optional<double> p25, p50, p75;
  std::size_t n_defined = 0;
  std::size_t n_undefined = 0;
};

/// Per-group measure values summarized across groups. Throws TooFewGroups
/// when fewer than two groups carry a defined value, since the standard
/// deviation is then meaningless.
GroupStatistics group_statistics(const GroupedPredictions& gp,
                                 MeasureKind kind, std::size_t cls,
                                 AndKind op);

/// Same summary without the two-group requirement; fields stay empty where
/// they cannot be computed.
GroupStatistics summarize_values(const std::vector<std::optional<double>>& values);

struct VarianceComparison {
  double var_soft = 0.0;
  double var_crisp = 0.0;
  std::optional<double> inflation_ratio;  // var_crisp / var_soft
  std::size_t n_groups = 0;
};

/// Across-group variance of the product-operator measure against the same
/// measure computed on hardened predictions. Groups where either value is
/// undefined are skipped pairwise.
VarianceComparison variance_comparison(const GroupedPredictions& gp,
                                       std::size_t cls,
                                       const HardeningRule& rule,
                                       MeasureKind kind = MeasureKind::sens);

}  // namespace softval
