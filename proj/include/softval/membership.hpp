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
#include <string_view>
#include <vector>

#include "softval/error.hpp"

namespace softval {

/// Closed world: each row of memberships sums to 1. Open world: classes are
/// modelled independently; rows may sum to anything in [0, n_classes]
/// (multiple or no membership).
enum class World { closed, open };

inline const char* to_string(World w) noexcept {
  return w == World::closed ? "closed" : "open";
}

struct Tolerances {
  /// Entries within [-clamp, 1+clamp] are clamped into [0, 1]; anything
  /// further out is rejected.
  double clamp = 1e-9;
  /// Closed-world rows whose sum is within row_sum of 1 are renormalized;
  /// anything further off is rejected.
  double row_sum = 1e-6;
};

/// Immutable n x n_classes matrix of class memberships in [0, 1].
/// One row per sample; construction goes through validate().
class MembershipMatrix {
 public:
  /// Validates and takes ownership of row-major values. row_labels, when
  /// given, are used in diagnostics (e.g. sample ids from a data file).
  static MembershipMatrix validate(std::vector<double> values, std::size_t rows,
                                   std::vector<std::string> class_names,
                                   World world, const Tolerances& tol = {},
                                   std::span<const std::string> row_labels = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t classes() const noexcept { return class_names_.size(); }
  World world() const noexcept { return world_; }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }

  std::size_t class_index(std::string_view name) const;

  double at(std::size_t row, std::size_t cls) const noexcept {
    return values_[row * class_names_.size() + cls];
  }

  std::span<const double> row(std::size_t r) const noexcept {
    return {values_.data() + r * class_names_.size(), class_names_.size()};
  }

  std::span<const double> data() const noexcept { return values_; }

  std::vector<double> column(std::size_t cls) const;

  /// Memberships of the complement class "not cls": 1 - column(cls).
  std::vector<double> negated_column(std::size_t cls) const;

  /// True when every entry is exactly 0 or 1.
  bool crisp() const noexcept;
  bool row_crisp(std::size_t r) const noexcept;

 private:
  MembershipMatrix(std::vector<double> values, std::size_t rows,
                   std::vector<std::string> class_names, World world)
      : values_(std::move(values)),
        rows_(rows),
        class_names_(std::move(class_names)),
        world_(world) {}

  std::vector<double> values_;
  std::size_t rows_;
  std::vector<std::string> class_names_;
  World world_;
};

struct HardeningRule {
  enum class Kind { winner_takes_all, threshold };
  enum class TieBreak { lowest_index, error };

  Kind kind = Kind::winner_takes_all;
  double threshold = 0.0;  // only meaningful for Kind::threshold, in (0, 1)
  TieBreak tie_break = TieBreak::lowest_index;

  static HardeningRule winner_takes_all(
      TieBreak tie = TieBreak::lowest_index) {
    return HardeningRule{Kind::winner_takes_all, 0.0, tie};
  }

  static HardeningRule with_threshold(double t) {
    if (!(t > 0.0 && t < 1.0))
      fail(ErrorKind::domain_error, "hardening threshold must lie in (0, 1)");
    return HardeningRule{Kind::threshold, t, TieBreak::lowest_index};
  }
};

/// Converts soft memberships to indicator memberships. winner_takes_all
/// yields a closed-world crisp matrix (exactly one 1 per row); threshold
/// yields an open-world matrix with membership > threshold per class, which
/// may mark several classes or none.
MembershipMatrix harden(const MembershipMatrix& m, const HardeningRule& rule);

}  // namespace softval
