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

#include "ripforge/golomb.hpp"

#include <algorithm>
#include <string>

#include "ripforge/error.hpp"

namespace ripforge {

GolombRuler build_ruler(const PrimeModulus& p) {
  const auto pv = static_cast<std::int64_t>(p.value());
  if (pv < 3) throw Error(ErrorCode::kInvalidModulus, "Golomb ruler needs a prime p >= 3");
  GolombRuler ruler{p, {}, 3 * pv * (pv - 1) + 1};
  ruler.marks.reserve(static_cast<std::size_t>(pv));
  for (std::int64_t k = 0; k < pv; ++k) {
    ruler.marks.push_back(2 * pv * k + static_cast<std::int64_t>(square_mod(static_cast<std::uint64_t>(k), p)));
  }
  return ruler;
}

GolombRuler build_ruler(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidModulus, std::to_string(p) + " is not prime");
  return build_ruler(PrimeModulus(p));
}

bool verify_ruler(std::span<const std::int64_t> marks) {
  std::vector<std::int64_t> diffs;
  diffs.reserve(marks.size() * (marks.size() > 0 ? marks.size() - 1 : 0));
  for (std::size_t a = 0; a < marks.size(); ++a) {
    for (std::size_t b = 0; b < marks.size(); ++b) {
      if (a != b) diffs.push_back(marks[a] - marks[b]);
    }
  }
  std::sort(diffs.begin(), diffs.end());
  return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
}

}  // namespace ripforge
