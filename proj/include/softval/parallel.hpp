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

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace softval::par {

// Reductions are decomposed into fixed-size blocks; per-block partials are
// computed in parallel and merged in block order. The decomposition does not
// depend on the thread count, so results are bit-identical for any number of
// threads.
inline constexpr std::size_t block_size = 4096;

inline int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) noexcept {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

// fn(block_index, lo, hi, partial) fills one partial per block.
// Callers combine the returned partials sequentially.
template <typename Partial, typename BlockFn>
std::vector<Partial> map_blocks(std::size_t count, BlockFn&& fn) {
  const std::size_t nblocks = count == 0 ? 0 : (count - 1) / block_size + 1;
  std::vector<Partial> partials(nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const std::size_t idx = static_cast<std::size_t>(b);
    const std::size_t lo = idx * block_size;
    const std::size_t hi = std::min(count, lo + block_size);
    fn(idx, lo, hi, partials[idx]);
  }
  return partials;
}

}  // namespace softval::par
