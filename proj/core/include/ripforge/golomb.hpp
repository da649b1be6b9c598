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

#include <cstdint>
#include <span>
#include <vector>

#include "ripforge/num_theory.hpp"

namespace ripforge {

/// Erdos-Turan ruler g(k) = 2pk + (k^2 mod p), k in [0, p), with marks in
/// [0, q) where q = 3p(p-1) + 1.
struct GolombRuler {
  PrimeModulus p;
  std::vector<std::int64_t> marks;
  std::int64_t range_bound;

  /// 2q - 1 = 6p^2 - 6p + 1, the row count of the Golomb phase matrix.
  std::int64_t difference_span() const noexcept { return 2 * range_bound - 1; }
};

/// kInvalidModulus unless p >= 3.
GolombRuler build_ruler(const PrimeModulus& p);
GolombRuler build_ruler(std::uint64_t p);

/// True iff the ordered differences marks[a] - marks[b], a != b, are pairwise
/// distinct. Sorts the p(p-1) differences, O(p^2 log p).
bool verify_ruler(std::span<const std::int64_t> marks);

}  // namespace ripforge
