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

#include <string_view>

#include "softval/error.hpp"

namespace softval {

/// AND-operators for memberships in [0, 1]. For every pair of inputs
/// zf_strong <= zf_product <= zf_weak, and on {0, 1} inputs all three equal
/// the Boolean AND. The enum order is also the reporting order
/// (worst case, expected, best case).
enum class AndKind { strong, product, weak };

inline constexpr AndKind all_and_kinds[] = {AndKind::strong, AndKind::product,
                                            AndKind::weak};

namespace detail {

// Unchecked kernels; inputs must already be validated memberships.

inline double zf_weak(double r, double p) noexcept { return r < p ? r : p; }

// Correctly rounded max(r + p - 1, 0). The TwoSum correction keeps
// zf_strong <= zf_product exact in doubles; the plain expression can
// overshoot the product by one ulp when r = 1 or p = 1.
inline double zf_strong(double r, double p) noexcept {
  const double s = r + p;
  const double pv = s - r;
  const double err = (r - (s - pv)) + (p - pv);
  const double v = (s - 1.0) + err;  // s - 1 is exact for s >= 0.5
  return v > 0.0 ? v : 0.0;
}

inline double zf_product(double r, double p) noexcept { return r * p; }

inline double zf(AndKind op, double r, double p) noexcept {
  switch (op) {
    case AndKind::strong: return zf_strong(r, p);
    case AndKind::product: return zf_product(r, p);
    default: return zf_weak(r, p);
  }
}

inline void check_membership(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    fail(ErrorKind::domain_error,
         std::string(name) + " membership must lie in [0, 1]");
}

}  // namespace detail

/// Best-case overlap: min(r, p).
inline double zf_weak(double r, double p) {
  detail::check_membership(r, "reference");
  detail::check_membership(p, "prediction");
  return detail::zf_weak(r, p);
}

/// Worst-case overlap: max(r + p - 1, 0).
inline double zf_strong(double r, double p) {
  detail::check_membership(r, "reference");
  detail::check_membership(p, "prediction");
  return detail::zf_strong(r, p);
}

/// Expected overlap under independent mixing: r * p.
inline double zf_product(double r, double p) {
  detail::check_membership(r, "reference");
  detail::check_membership(p, "prediction");
  return detail::zf_product(r, p);
}

inline double zf(AndKind op, double r, double p) {
  detail::check_membership(r, "reference");
  detail::check_membership(p, "prediction");
  return detail::zf(op, r, p);
}

inline const char* to_string(AndKind op) noexcept {
  switch (op) {
    case AndKind::strong: return "strong";
    case AndKind::product: return "product";
    default: return "weak";
  }
}

inline AndKind and_kind_from_string(std::string_view s) {
  if (s == "strong") return AndKind::strong;
  if (s == "product") return AndKind::product;
  if (s == "weak") return AndKind::weak;
  fail(ErrorKind::domain_error, "unknown operator '" + std::string(s) + "'");
}

}  // namespace softval
