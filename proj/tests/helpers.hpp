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

#include <random>
#include <string>
#include <vector>

#include "softval/membership.hpp"

namespace testutil {

inline std::vector<std::string> class_names(std::size_t ng) {
  std::vector<std::string> names;
  for (std::size_t g = 0; g < ng; ++g)
    names.push_back(std::string(1, static_cast<char>('A' + g)));
  return names;
}

inline softval::MembershipMatrix make_matrix(
    const std::vector<std::vector<double>>& rows,
    softval::World world = softval::World::closed,
    std::vector<std::string> names = {}) {
  const std::size_t ng = rows.front().size();
  if (names.empty()) names = class_names(ng);
  std::vector<double> flat;
  flat.reserve(rows.size() * ng);
  for (const auto& row : rows)
    flat.insert(flat.end(), row.begin(), row.end());
  return softval::MembershipMatrix::validate(std::move(flat), rows.size(),
                                             std::move(names), world);
}

/// Random soft closed-world matrix (rows on the simplex).
inline softval::MembershipMatrix random_closed(std::size_t n, std::size_t ng,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> values(n * ng);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
      values[i * ng + g] = expo(rng);
      sum += values[i * ng + g];
    }
    for (std::size_t g = 0; g < ng; ++g) values[i * ng + g] /= sum;
  }
  return softval::MembershipMatrix::validate(std::move(values), n,
                                             class_names(ng),
                                             softval::World::closed);
}

/// Random crisp closed-world matrix (one-hot rows).
inline softval::MembershipMatrix random_crisp(std::size_t n, std::size_t ng,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, ng - 1);
  std::vector<double> values(n * ng, 0.0);
  for (std::size_t i = 0; i < n; ++i) values[i * ng + pick(rng)] = 1.0;
  return softval::MembershipMatrix::validate(std::move(values), n,
                                             class_names(ng),
                                             softval::World::closed);
}

/// Random open-world matrix (independent memberships).
inline softval::MembershipMatrix random_open(std::size_t n, std::size_t ng,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> values(n * ng);
  for (double& v : values) v = uni(rng);
  return softval::MembershipMatrix::validate(std::move(values), n,
                                             class_names(ng),
                                             softval::World::open);
}

}  // namespace testutil
