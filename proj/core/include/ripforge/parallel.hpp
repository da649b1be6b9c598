// Copyright 2026 The ripforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ripforge {

/// Worker count: RIPFORGE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(block_index) for every block in [0, blocks), spread over up to
/// worker_count() threads. Blocks are claimed dynamically; callers that need
/// schedule-independent results must write per-block outputs and combine them
/// in block order afterwards.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// Splits [0, n) into contiguous ranges whose boundaries depend only on n and
/// the requested block count, never on the number of threads.
struct BlockRange {
  std::size_t begin;
  std::size_t end;
};

inline BlockRange block_range(std::size_t n, std::size_t blocks, std::size_t b) {
  const std::size_t base = n / blocks;
  const std::size_t extra = n % blocks;
  const std::size_t begin = b * base + std::min(b, extra);
  return {begin, begin + base + (b < extra ? 1 : 0)};
}

inline std::size_t default_block_count(std::size_t n, std::size_t grain = 1) {
  if (n == 0) return 0;
  return std::clamp<std::size_t>(n / std::max<std::size_t>(grain, 1), 1, 256);
}

/// Parallel loop over [0, n) in fixed blocks; body(i) must only touch state
/// owned by index i.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, std::size_t grain = 1) {
  const std::size_t blocks = default_block_count(n, grain);
  parallel_blocks(blocks, [&](std::size_t b) {
    const auto r = block_range(n, blocks, b);
    for (std::size_t i = r.begin; i < r.end; ++i) body(i);
  });
}

/// Pairwise (tree) summation of per-block partials; order is fixed by index.
template <typename T>
T pairwise_sum(std::vector<T> values) {
  if (values.empty()) return T{};
  while (values.size() > 1) {
    std::vector<T> next((values.size() + 1) / 2);
    for (std::size_t i = 0; i < values.size() / 2; ++i) next[i] = values[2 * i] + values[2 * i + 1];
    if (values.size() % 2 == 1) next.back() = values.back();
    values = std::move(next);
  }
  return values.front();
}

/// Deterministic parallel reduction: partial(begin, end) is evaluated on
/// fixed blocks and the partials are combined by pairwise summation.
template <typename T, typename Partial>
T parallel_sum(std::size_t n, Partial&& partial, std::size_t grain = 1) {
  const std::size_t blocks = default_block_count(n, grain);
  std::vector<T> partials(blocks, T{});
  parallel_blocks(blocks, [&](std::size_t b) {
    const auto r = block_range(n, blocks, b);
    partials[b] = partial(r.begin, r.end);
  });
  return pairwise_sum(std::move(partials));
}

}  // namespace ripforge
