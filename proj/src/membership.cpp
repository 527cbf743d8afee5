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
#include "softval/membership.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace softval {

namespace {

std::string row_name(std::span<const std::string> labels, std::size_t r) {
  if (r < labels.size()) return "sample '" + labels[r] + "'";
  return "row " + std::to_string(r + 1);
}

}  // namespace

MembershipMatrix MembershipMatrix::validate(
    std::vector<double> values, std::size_t rows,
    std::vector<std::string> class_names, World world, const Tolerances& tol,
    std::span<const std::string> row_labels) {
  const std::size_t ng = class_names.size();
  if (ng < 2) fail(ErrorKind::shape_error, "need at least two classes");
  if (rows < 1) fail(ErrorKind::shape_error, "need at least one sample row");
  if (values.size() != rows * ng) {
    std::ostringstream os;
    os << "expected " << rows * ng << " values for " << rows << "x" << ng
       << " matrix, got " << values.size();
    fail(ErrorKind::shape_error, os.str());
  }
  {
    std::set<std::string> unique(class_names.begin(), class_names.end());
    if (unique.size() != ng)
      fail(ErrorKind::shape_error, "class names must be distinct");
  }

  for (std::size_t r = 0; r < rows; ++r) {
    double* row = values.data() + r * ng;
    for (std::size_t g = 0; g < ng; ++g) {
      const double v = row[g];
      if (!std::isfinite(v) || v < -tol.clamp || v > 1.0 + tol.clamp) {
        std::ostringstream os;
        os << row_name(row_labels, r) << ", class '" << class_names[g]
           << "': membership " << v << " outside [0, 1] beyond clamp tolerance "
           << tol.clamp;
        fail(ErrorKind::out_of_range, os.str());
      }
      if (v < 0.0) row[g] = 0.0;
      if (v > 1.0) row[g] = 1.0;
    }
    if (world == World::closed) {
      double sum = 0.0;
      for (std::size_t g = 0; g < ng; ++g) sum += row[g];
      if (std::abs(sum - 1.0) > tol.row_sum) {
        std::ostringstream os;
        os << row_name(row_labels, r) << ": closed-world row sum " << sum
           << " deviates from 1 by more than " << tol.row_sum;
        fail(ErrorKind::row_sum_violation, os.str());
      }
      if (sum != 1.0) {
        for (std::size_t g = 0; g < ng; ++g) row[g] /= sum;
      }
    }
  }

  return MembershipMatrix(std::move(values), rows, std::move(class_names),
                          world);
}

std::size_t MembershipMatrix::class_index(std::string_view name) const {
  for (std::size_t g = 0; g < class_names_.size(); ++g)
    if (class_names_[g] == name) return g;
  fail(ErrorKind::unknown_class, "no class named '" + std::string(name) + "'");
}

std::vector<double> MembershipMatrix::column(std::size_t cls) const {
  if (cls >= classes())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, cls);
  return out;
}

std::vector<double> MembershipMatrix::negated_column(std::size_t cls) const {
  if (cls >= classes())
    fail(ErrorKind::unknown_class,
         "class index " + std::to_string(cls) + " out of range");
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = 1.0 - at(r, cls);
  return out;
}

bool MembershipMatrix::row_crisp(std::size_t r) const noexcept {
  for (std::size_t g = 0; g < classes(); ++g) {
    const double v = at(r, g);
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

bool MembershipMatrix::crisp() const noexcept {
  for (std::size_t r = 0; r < rows_; ++r)
    if (!row_crisp(r)) return false;
  return true;
}

MembershipMatrix harden(const MembershipMatrix& m, const HardeningRule& rule) {
  const std::size_t n = m.rows();
  const std::size_t ng = m.classes();
  std::vector<double> out(n * ng, 0.0);

  if (rule.kind == HardeningRule::Kind::winner_takes_all) {
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t best = 0;
      bool tied = false;
      for (std::size_t g = 1; g < ng; ++g) {
        const double v = m.at(r, g);
        if (v > m.at(r, best)) {
          best = g;
          tied = false;
        } else if (v == m.at(r, best)) {
          tied = true;
        }
      }
      if (tied && rule.tie_break == HardeningRule::TieBreak::error)
        fail(ErrorKind::tie_error,
             "row " + std::to_string(r + 1) + ": tied maximum membership");
      out[r * ng + best] = 1.0;
    }
    return MembershipMatrix::validate(std::move(out), n, m.class_names(),
                                      World::closed);
  }

  // threshold hardening: strict comparison, open-world output
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t g = 0; g < ng; ++g)
      out[r * ng + g] = m.at(r, g) > rule.threshold ? 1.0 : 0.0;
  return MembershipMatrix::validate(std::move(out), n, m.class_names(),
                                    World::open);
}

}  // namespace softval
