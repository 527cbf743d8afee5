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
#include "softval/curves.hpp"
#include "softval/oracle.hpp"

using namespace softval;
using testutil::make_matrix;

namespace {

GroupedPredictions two_groups(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GroupedPredictions::Group> groups;
  groups.push_back({"g=1", testutil::random_closed(30, 3, rng()),
                    testutil::random_closed(30, 3, rng())});
  groups.push_back({"g=2", testutil::random_closed(30, 3, rng()),
                    testutil::random_closed(30, 3, rng())});
  return GroupedPredictions::from_groups(std::move(groups));
}

}  // namespace

TEST_CASE("grouped predictions enforce shared classes and unique sorted keys") {
  auto gp = two_groups(121);
  CHECK(gp.size() == 2);
  CHECK(gp.group(0).key == "g=1");
  CHECK(gp.total_samples() == 60);

  std::vector<GroupedPredictions::Group> dup;
  dup.push_back({"a", testutil::random_closed(5, 2, 1),
                 testutil::random_closed(5, 2, 2)});
  dup.push_back({"a", testutil::random_closed(5, 2, 3),
                 testutil::random_closed(5, 2, 4)});
  CHECK_THROWS_AS(GroupedPredictions::from_groups(std::move(dup)), Error);
}

TEST_CASE("group keys order numerically when possible") {
  CHECK(group_key_less("2", "10"));
  CHECK(group_key_less("iter=2", "iter=10"));
  CHECK(!group_key_less("iter=10", "iter=2"));
  CHECK(group_key_less("iter=1,fold=2", "iter=1,fold=10"));
  CHECK(group_key_less("a", "b"));
  CHECK(!group_key_less("b", "a"));
  CHECK(group_key_less("site=alpha", "site=beta"));
}

TEST_CASE("threshold sweep endpoints and monotonicity") {
  const auto ref = make_matrix({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
  const auto pred =
      make_matrix({{0.9, 0.1}, {0.6, 0.4}, {0.4, 0.6}, {0.2, 0.8}});
  const auto curve = spec_sens_curve(ref, pred, 0);

  CHECK(curve.front().threshold == 0.0);
  CHECK(curve.front().sens == 1.0);
  CHECK(curve.front().spec == 0.0);
  CHECK(curve.back().threshold == 1.0);
  CHECK(curve.back().sens == 0.0);
  CHECK(curve.back().spec == 1.0);

  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].threshold > curve[i - 1].threshold);
    CHECK(curve[i].sens <= curve[i - 1].sens);
    CHECK(curve[i].spec >= curve[i - 1].spec);
  }

  SUBCASE("separable predictions pass through the perfect corner") {
    bool perfect = false;
    for (const CurvePoint& pt : curve)
      if (pt.sens == 1.0 && pt.spec == 1.0) perfect = true;
    CHECK(perfect);  // positives at 0.9/0.6 separate from negatives at 0.4/0.2
  }
}

TEST_CASE("threshold ties are strict by default, configurable to inclusive") {
  const auto ref = make_matrix({{1, 0}, {0, 1}});
  const auto pred = make_matrix({{0.5, 0.5}, {0.3, 0.7}});
  const auto strict = spec_sens_curve(ref, pred, 0, {0.5});
  CHECK(strict.front().sens == 0.0);  // 0.5 > 0.5 is false
  const auto inclusive = spec_sens_curve(ref, pred, 0, {0.5},
                                         SoftRowPolicy::error,
                                         ThresholdRule::greater_equal);
  CHECK(inclusive.front().sens == 1.0);
  CHECK(inclusive.front().spec == 1.0);
}

TEST_CASE("soft reference rows abort or drop out per policy") {
  const auto ref = make_matrix({{1, 0}, {0.5, 0.5}, {0, 1}});
  const auto pred = make_matrix({{0.9, 0.1}, {0.5, 0.5}, {0.2, 0.8}});
  try {
    spec_sens_curve(ref, pred, 0);
    FAIL("expected soft reference error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::soft_reference_error);
  }
  const auto curve =
      spec_sens_curve(ref, pred, 0, {}, SoftRowPolicy::exclude);
  CHECK(curve.front().sens == 1.0);  // built from the two crisp rows
}

TEST_CASE("the threshold working point always lies on the curve") {
  std::mt19937_64 seed_gen(123);
  for (int rep = 0; rep < 20; ++rep) {
    const auto ref = testutil::random_crisp(40, 3, seed_gen());
    const auto pred = testutil::random_closed(40, 3, seed_gen());
    const auto curve = spec_sens_curve(ref, pred, 0);
    const auto at_third =
        spec_sens_curve(ref, pred, 0, {1.0 / 3.0}).front();
    bool found = false;
    for (const CurvePoint& pt : curve)
      if (pt.sens == at_third.sens && pt.spec == at_third.spec) found = true;
    CHECK(found);
  }
}

TEST_CASE("winner-takes-all working point vs the threshold curve") {
  SUBCASE("on the curve when argmax agrees with the one-third threshold") {
    // every prediction has a unique class above 1/3
    const auto ref = make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const auto pred = make_matrix({{0.8, 0.1, 0.1},
                                   {0.2, 0.7, 0.1},
                                   {0.1, 0.2, 0.7},
                                   {0.5, 0.4, 0.1}});
    const auto wta = harden(pred, HardeningRule::winner_takes_all());
    const auto curve = spec_sens_curve(ref, pred, 0);
    const double s = *sens(ref, wta, 0, AndKind::product).value;
    const double sp = *spec(ref, wta, 0, AndKind::product).value;
    bool found = false;
    for (const CurvePoint& pt : curve)
      if (pt.sens == s && pt.spec == sp) found = true;
    CHECK(found);
  }

  SUBCASE("away from the one-third point when two classes exceed the cut") {
    // (0.4, 0.45, 0.15): the threshold rule marks class A positive, the
    // argmax rule does not, so the working points separate.
    const auto ref = make_matrix(
        {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const auto pred = make_matrix({{0.4, 0.45, 0.15},
                                   {0.9, 0.05, 0.05},
                                   {0.1, 0.8, 0.1},
                                   {0.05, 0.05, 0.9},
                                   {0.45, 0.4, 0.15}});
    const auto wta = harden(pred, HardeningRule::winner_takes_all());
    const double s = *sens(ref, wta, 0, AndKind::product).value;
    const auto third = spec_sens_curve(ref, pred, 0, {1.0 / 3.0}).front();
    CHECK(s != third.sens);
    CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(third.sens == 1.0);
  }
}

TEST_CASE("soft measures on crisp-labelled subsets are operator independent") {
  const auto ref = testutil::random_crisp(50, 3, 125);
  const auto pred = testutil::random_closed(50, 3, 126);
  for (std::size_t g = 0; g < 3; ++g) {
    const auto s = *sens(ref, pred, g, AndKind::strong).value;
    CHECK(s == *sens(ref, pred, g, AndKind::product).value);
    CHECK(s == *sens(ref, pred, g, AndKind::weak).value);
  }
}

TEST_CASE("group statistics") {
  SUBCASE("identical groups have zero spread") {
    const auto ref = testutil::random_closed(30, 3, 127);
    const auto pred = testutil::random_closed(30, 3, 128);
    std::vector<GroupedPredictions::Group> groups;
    groups.push_back({"g=1", ref, pred});
    groups.push_back({"g=2", ref, pred});
    const auto gp = GroupedPredictions::from_groups(std::move(groups));
    const auto st = group_statistics(gp, MeasureKind::sens, 0, AndKind::product);
    CHECK(*st.sd == 0.0);
    CHECK(*st.mean == *sens(ref, pred, 0, AndKind::product).value);
    CHECK(*st.p50 == *st.mean);
  }

  SUBCASE("two groups give the closed-form mean and spread") {
    const auto gp = two_groups(129);
    const double v1 =
        *sens(gp.group(0).ref, gp.group(0).pred, 1, AndKind::weak).value;
    const double v2 =
        *sens(gp.group(1).ref, gp.group(1).pred, 1, AndKind::weak).value;
    const auto st = group_statistics(gp, MeasureKind::sens, 1, AndKind::weak);
    CHECK(*st.mean == doctest::Approx((v1 + v2) / 2).epsilon(1e-14));
    CHECK(*st.sd ==
          doctest::Approx(std::abs(v1 - v2) / std::sqrt(2.0)).epsilon(1e-12));
  }

  SUBCASE("a single group is too few for a spread") {
    std::vector<GroupedPredictions::Group> one;
    one.push_back({"only", testutil::random_closed(10, 3, 131),
                   testutil::random_closed(10, 3, 132)});
    const auto gp = GroupedPredictions::from_groups(std::move(one));
    try {
      group_statistics(gp, MeasureKind::sens, 0, AndKind::product);
      FAIL("expected too few groups");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::too_few_groups);
    }
  }

  SUBCASE("undefined groups are excluded and counted") {
    // class C never occurs in the reference of the second group
    std::vector<GroupedPredictions::Group> groups;
    groups.push_back({"g=1",
                      make_matrix({{0, 0, 1}, {1, 0, 0}}),
                      make_matrix({{0.1, 0.1, 0.8}, {0.7, 0.2, 0.1}})});
    groups.push_back({"g=2",
                      make_matrix({{1, 0, 0}, {0, 1, 0}}),
                      make_matrix({{0.9, 0.05, 0.05}, {0.2, 0.7, 0.1}})});
    groups.push_back({"g=3",
                      make_matrix({{0, 0, 1}, {0, 0, 1}}),
                      make_matrix({{0.3, 0.3, 0.4}, {0.1, 0.2, 0.7}})});
    const auto gp = GroupedPredictions::from_groups(std::move(groups));
    const auto st = group_statistics(gp, MeasureKind::sens, 2, AndKind::weak);
    CHECK(st.n_defined == 2);
    CHECK(st.n_undefined == 1);
  }
}

TEST_CASE("variance comparison against hardened predictions") {
  SUBCASE("identical groups leave the ratio undefined") {
    const auto ref = testutil::random_closed(30, 3, 133);
    const auto pred = testutil::random_closed(30, 3, 134);
    std::vector<GroupedPredictions::Group> groups;
    groups.push_back({"g=1", ref, pred});
    groups.push_back({"g=2", ref, pred});
    const auto gp = GroupedPredictions::from_groups(std::move(groups));
    const auto vc =
        variance_comparison(gp, 0, HardeningRule::winner_takes_all());
    CHECK(vc.var_soft == 0.0);
    CHECK(vc.var_crisp == 0.0);
    CHECK(!vc.inflation_ratio.has_value());
  }

  SUBCASE("already-crisp predictions give ratio exactly 1") {
    std::mt19937_64 seed_gen(135);
    std::vector<GroupedPredictions::Group> groups;
    for (int g = 0; g < 4; ++g)
      groups.push_back({"g=" + std::to_string(g),
                        testutil::random_crisp(40, 3, seed_gen()),
                        testutil::random_crisp(40, 3, seed_gen())});
    const auto gp = GroupedPredictions::from_groups(std::move(groups));
    const auto vc =
        variance_comparison(gp, 0, HardeningRule::winner_takes_all());
    REQUIRE(vc.inflation_ratio.has_value());
    CHECK(*vc.inflation_ratio == 1.0);
  }

  SUBCASE("gradual transitions inflate the hardened variance") {
    // posterior-style generator: the prediction is the noisy posterior, the
    // crisp label is sampled from it
    std::mt19937_64 rng(137);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.05);
    std::exponential_distribution<double> expo(1.0);
    std::vector<GroupedPredictions::Group> groups;
    for (int g = 0; g < 24; ++g) {
      const std::size_t n = 120;
      std::vector<double> ref_values(n * 3, 0.0), pred_values(n * 3);
      for (std::size_t i = 0; i < n; ++i) {
        double post[3], sum = 0;
        for (double& x : post) {
          x = expo(rng);
          sum += x;
        }
        for (double& x : post) x /= sum;
        double psum = 0;
        for (std::size_t c = 0; c < 3; ++c) {
          double v = std::clamp(post[c] + noise(rng), 0.0, 1.0);
          pred_values[i * 3 + c] = v;
          psum += v;
        }
        for (std::size_t c = 0; c < 3; ++c) pred_values[i * 3 + c] /= psum;
        const double u = uni(rng);
        ref_values[i * 3 + (u < post[0] ? 0 : u < post[0] + post[1] ? 1 : 2)] =
            1.0;
      }
      groups.push_back(
          {"g=" + std::to_string(g),
           MembershipMatrix::validate(std::move(ref_values), n,
                                      testutil::class_names(3), World::closed),
           MembershipMatrix::validate(std::move(pred_values), n,
                                      testutil::class_names(3),
                                      World::closed)});
    }
    const auto gp = GroupedPredictions::from_groups(std::move(groups));
    const auto vc =
        variance_comparison(gp, 0, HardeningRule::winner_takes_all());
    REQUIRE(vc.inflation_ratio.has_value());
    CHECK(*vc.inflation_ratio > 1.0);
  }

  SUBCASE("one group is too few") {
    std::vector<GroupedPredictions::Group> one;
    one.push_back({"only", testutil::random_closed(10, 3, 139),
                   testutil::random_closed(10, 3, 140)});
    const auto gp = GroupedPredictions::from_groups(std::move(one));
    CHECK_THROWS_AS(
        variance_comparison(gp, 0, HardeningRule::winner_takes_all()), Error);
  }
}
