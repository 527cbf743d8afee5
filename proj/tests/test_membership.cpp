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
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "softval/membership.hpp"

using namespace softval;
using testutil::make_matrix;

TEST_CASE("crisp identity labels validate unchanged") {
  const auto m = make_matrix({{1, 0}, {0, 1}});
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.0);
  CHECK(m.at(1, 1) == 1.0);
  CHECK(m.crisp());
}

TEST_CASE("closed-world rows within tolerance are renormalized") {
  const auto m = make_matrix({{0.5, 0.5000001}});
  const double sum = m.at(0, 0) + m.at(0, 1);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.at(0, 0) < 0.5);
}

TEST_CASE("closed-world rows beyond tolerance are rejected") {
  std::vector<double> values{0.7, 0.2};
  try {
    MembershipMatrix::validate(values, 1, {"A", "B"}, World::closed);
    FAIL("expected a row sum violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::row_sum_violation);
  }
}

TEST_CASE("entries slightly outside [0,1] are clamped, farther ones rejected") {
  const auto m = MembershipMatrix::validate({1.0 + 1e-12, -1e-12}, 1,
                                            {"A", "B"}, World::closed);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.0);

  CHECK_THROWS_AS(MembershipMatrix::validate({1.5, -0.5}, 1, {"A", "B"},
                                             World::closed),
                  Error);
  CHECK_THROWS_AS(MembershipMatrix::validate({std::nan(""), 1.0}, 1,
                                             {"A", "B"}, World::open),
                  Error);
}

TEST_CASE("shape and naming invariants") {
  CHECK_THROWS_AS(MembershipMatrix::validate({1.0}, 1, {"A"}, World::open),
                  Error);  // one class is not a classification problem
  CHECK_THROWS_AS(
      MembershipMatrix::validate({1, 0, 0, 1}, 2, {"A", "A"}, World::closed),
      Error);
  CHECK_THROWS_AS(
      MembershipMatrix::validate({1, 0, 0}, 1, {"A", "B"}, World::closed),
      Error);
  const auto m = make_matrix({{0.25, 0.75}});
  CHECK(m.class_index("B") == 1);
  CHECK_THROWS_AS(m.class_index("C"), Error);
}

TEST_CASE("open-world rows may sum above 1 or to 0") {
  const auto m = make_matrix({{1, 1}, {0, 0}, {0.3, 0.9}}, World::open);
  CHECK(m.rows() == 3);
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(2, 1) == 0.9);
}

TEST_CASE("complement column") {
  const auto m = make_matrix({{1, 0}, {0, 1}, {0.3, 0.7}});
  const auto neg = m.negated_column(0);
  CHECK(neg[0] == 0.0);
  CHECK(neg[1] == 1.0);
  CHECK(neg[2] == 0.7);

  const auto half = make_matrix({{0.5, 0.5}});
  CHECK(half.negated_column(0)[0] == 0.5);  // fixed point

  CHECK_THROWS_AS(m.negated_column(5), Error);
}

TEST_CASE("complement is an involution on dyadic memberships") {
  // Exact for inputs whose complement is representable; a dyadic grid
  // guarantees that.
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> grid(0, 1 << 20);
  for (int i = 0; i < 10000; ++i) {
    const double x = static_cast<double>(grid(rng)) / (1 << 20);
    const double y = 1.0 - x;
    CHECK(1.0 - y == x);
  }
}

TEST_CASE("crisp closed-world complement equals the sum of other columns") {
  const auto m = testutil::random_crisp(64, 3, 31);
  const auto neg = m.negated_column(2);
  for (std::size_t i = 0; i < m.rows(); ++i)
    CHECK(neg[i] == m.at(i, 0) + m.at(i, 1));  // bitwise: crisp values
  // worked crisp row: class 3 of (0,1,0) has complement membership 1
  const auto row = make_matrix({{0, 1, 0}});
  CHECK(row.negated_column(2)[0] == 1.0);
  CHECK(row.negated_column(1)[0] == 0.0);
}

TEST_CASE("winner-takes-all hardening") {
  const auto m = make_matrix({{0.2, 0.5, 0.3}});
  const auto h = harden(m, HardeningRule::winner_takes_all());
  CHECK(h.at(0, 0) == 0.0);
  CHECK(h.at(0, 1) == 1.0);
  CHECK(h.at(0, 2) == 0.0);
  CHECK(h.world() == World::closed);

  SUBCASE("ties break to the lowest index by default") {
    const auto tied = make_matrix({{0.4, 0.4, 0.2}});
    const auto ht = harden(tied, HardeningRule::winner_takes_all());
    CHECK(ht.at(0, 0) == 1.0);
    CHECK(ht.at(0, 1) == 0.0);
  }

  SUBCASE("ties can be a hard error") {
    const auto tied = make_matrix({{0.4, 0.4, 0.2}});
    try {
      harden(tied, HardeningRule::winner_takes_all(
                       HardeningRule::TieBreak::error));
      FAIL("expected a tie error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::tie_error);
    }
  }

  SUBCASE("rows are one-hot and hardening is idempotent") {
    const auto soft = testutil::random_closed(100, 4, 37);
    const auto h1 = harden(soft, HardeningRule::winner_takes_all());
    for (std::size_t i = 0; i < h1.rows(); ++i) {
      double sum = 0.0;
      for (std::size_t g = 0; g < h1.classes(); ++g) {
        const double v = h1.at(i, g);
        CHECK((v == 0.0 || v == 1.0));
        sum += v;
      }
      CHECK(sum == 1.0);
    }
    const auto h2 = harden(h1, HardeningRule::winner_takes_all());
    for (std::size_t i = 0; i < h1.rows(); ++i)
      for (std::size_t g = 0; g < h1.classes(); ++g)
        CHECK(h1.at(i, g) == h2.at(i, g));
  }
}

TEST_CASE("threshold hardening marks memberships strictly above the cut") {
  const auto m = make_matrix({{0.2, 0.5, 0.3}});
  const auto h = harden(m, HardeningRule::with_threshold(1.0 / 3.0));
  CHECK(h.at(0, 0) == 0.0);
  CHECK(h.at(0, 1) == 1.0);
  CHECK(h.at(0, 2) == 0.0);
  CHECK(h.world() == World::open);

  // strictly greater: a membership equal to the threshold stays negative
  const auto eq = make_matrix({{0.5, 0.5}});
  const auto he = harden(eq, HardeningRule::with_threshold(0.5));
  CHECK(he.at(0, 0) == 0.0);
  CHECK(he.at(0, 1) == 0.0);

  CHECK_THROWS_AS(HardeningRule::with_threshold(0.0), Error);
  CHECK_THROWS_AS(HardeningRule::with_threshold(1.0), Error);
}
