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

// Compares the OpenMP block-parallel kernels against their sequential
// reference implementations on synthetic closed-world data.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "softval/confusion.hpp"
#include "softval/measures.hpp"
#include "softval/membership.hpp"
#include "softval/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

softval::MembershipMatrix random_closed(std::size_t n, std::size_t ng,
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
  std::vector<std::string> names;
  for (std::size_t g = 0; g < ng; ++g)
    names.push_back("c" + std::to_string(g));
  return softval::MembershipMatrix::validate(std::move(values), n, names,
                                             softval::World::closed);
}

template <typename Fn>
double time_best_ms(Fn&& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 1'000'000;
  std::size_t ng = 3;
  int reps = 5;
  if (argc > 1) n = static_cast<std::size_t>(std::atoll(argv[1]));
  if (argc > 2) ng = static_cast<std::size_t>(std::atoll(argv[2]));
  if (argc > 3) reps = std::atoi(argv[3]);

  std::printf("softval kernel benchmark: n=%zu classes=%zu reps=%d threads=%d\n",
              n, ng, reps, softval::par::max_threads());

  const auto ref = random_closed(n, ng, 1);
  const auto pred = random_closed(n, ng, 2);

  for (softval::AndKind op : softval::all_and_kinds) {
    double checksum_serial = 0.0, checksum_parallel = 0.0;
    const double serial_ms = time_best_ms(
        [&] {
          const auto cm = softval::build_serial(ref, pred, op);
          checksum_serial = cm.at(0, 0);
        },
        reps);
    const double parallel_ms = time_best_ms(
        [&] {
          const auto cm = softval::build(ref, pred, op);
          checksum_parallel = cm.at(0, 0);
        },
        reps);
    std::printf(
        "build    %-8s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   "
        "|diff| %.3e\n",
        softval::to_string(op), serial_ms, parallel_ms,
        serial_ms / parallel_ms,
        std::abs(checksum_serial - checksum_parallel));
  }

  const auto ref_col = ref.column(0);
  const auto pred_col = pred.column(0);
  for (softval::AndKind op : softval::all_and_kinds) {
    double v_serial = 0.0, v_parallel = 0.0;
    const double serial_ms = time_best_ms(
        [&] { v_serial = *softval::base_sens_serial(ref_col, pred_col, op).value; },
        reps);
    const double parallel_ms = time_best_ms(
        [&] { v_parallel = *softval::base_sens(ref_col, pred_col, op).value; },
        reps);
    std::printf(
        "base_sens %-7s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   "
        "|diff| %.3e\n",
        softval::to_string(op), serial_ms, parallel_ms,
        serial_ms / parallel_ms, std::abs(v_serial - v_parallel));
  }
  return 0;
}
