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
#include <utility>
#include <vector>

#include "softval/membership.hpp"
#include "softval/operators.hpp"

namespace softval {

/// Provenance of confusion counts: one of the AND-operators, or one of the
/// two recombined views (opt = best case, pess = worst case).
enum class ConfusionTag { strong, product, weak, opt, pess };

inline const char* to_string(ConfusionTag t) noexcept {
  switch (t) {
    case ConfusionTag::strong: return "strong";
    case ConfusionTag::product: return "product";
    case ConfusionTag::weak: return "weak";
    case ConfusionTag::opt: return "opt";
    default: return "pess";
  }
}

inline ConfusionTag to_tag(AndKind op) noexcept {
  switch (op) {
    case AndKind::strong: return ConfusionTag::strong;
    case AndKind::product: return ConfusionTag::product;
    default: return ConfusionTag::weak;
  }
}

/// Soft confusion counts. Rows index reference classes, columns predicted
/// classes. Counts are sums of per-sample conjunction values and are
/// non-negative reals even for crisp data.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::vector<double> counts,
                  std::vector<std::string> class_names, std::size_t n_samples,
                  ConfusionTag tag);

  std::size_t classes() const noexcept { return class_names_.size(); }
  std::size_t n_samples() const noexcept { return n_samples_; }
  ConfusionTag tag() const noexcept { return tag_; }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }

  double at(std::size_t ref_cls, std::size_t pred_cls) const noexcept {
    return counts_[ref_cls * class_names_.size() + pred_cls];
  }
  std::span<const double> counts() const noexcept { return counts_; }

 private:
  std::vector<double> counts_;
  std::vector<std::string> class_names_;
  std::size_t n_samples_;
  ConfusionTag tag_;
};

/// counts[i][j] = sum over samples of zf(op, ref[:,i], pred[:,j]).
/// Parallelized over fixed-size sample blocks; the result is bit-identical
/// for any thread count and matches build_serial to ~1e-15 relative.
ConfusionMatrix build(const MembershipMatrix& ref, const MembershipMatrix& pred,
                      AndKind op);

/// Sequential compensated-summation reference for build(); kept for tests
/// and benchmarks.
ConfusionMatrix build_serial(const MembershipMatrix& ref,
                             const MembershipMatrix& pred, AndKind op);

/// Elementwise sum; sample counts add up. All parts must share class names
/// and tag.
ConfusionMatrix pool(std::span<const ConfusionMatrix> parts);

/// opt = diagonal of weak + off-diagonal of strong (best case in every cell);
/// pess = diagonal of strong + off-diagonal of weak (worst case).
std::pair<ConfusionMatrix, ConfusionMatrix> recombine_opt_pess(
    const ConfusionMatrix& weak, const ConfusionMatrix& strong);

struct Marginals {
  std::vector<double> row_sums;
  std::vector<double> col_sums;
  double total = 0.0;
};

Marginals marginals(const ConfusionMatrix& cm);

}  // namespace softval
