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
#include <optional>

#include "ripforge/matrix.hpp"
#include "ripforge/num_theory.hpp"

namespace ripforge {

/// Upper bound on m*N for any constructed matrix.
inline constexpr std::uint64_t kMaxEntries = 50'000'000;

/// m x N matrix of independent signs, fully determined by seed.
Matrix rademacher(std::size_t m, std::size_t N, std::uint64_t seed);

/// p x N matrix with entries p^{-1/2} exp(2 pi i k f(k) / p), rows k in F_p,
/// columns the first N polynomials of degree <= d (all p^{d+1} by default).
/// Requires 1 <= d < p.
Matrix weil(std::uint64_t p, std::size_t d, std::optional<std::uint64_t> columns = std::nullopt);

/// m x m^2 matrix of translated and modulated Alltop vectors; column x*m + y
/// holds m^{-1/2} exp(2 pi i ((j + x)^3 + y j) / m). Requires m prime >= 5.
Matrix alltop(std::uint64_t m);

/// p^2 x p^{d+1} binary matrix: row a*p + b, column f is p^{-1/2} iff f(a) = b.
Matrix devore(std::uint64_t p, std::size_t d);

/// Rows of the Golomb phase matrix: m = 6p^2 - 6p + 1.
std::uint64_t golomb_rows(std::uint64_t p) noexcept;

/// m x p matrix exp(2 pi i (j g(k) mod m) / m) over the Erdos-Turan ruler g.
Matrix golomb_phase(std::uint64_t p);

/// (m + p) x p stack of (2m)^{-1/4} golomb_phase(p) over 2^{-1/4} I_p; an
/// exact l2 -> l4 isometry.
Matrix golomb_stacked(std::uint64_t p);

/// Parameters resolved for the composed (Golomb x Weil) construction.
struct ComposedParams {
  std::uint64_t p;
  std::size_t d;
  std::uint64_t m;
  bool overridden;
};

/// Without an override, p is the smallest prime in
/// [9 s^2 ceil(ln^2 N), 18 s^2 ceil(ln^2 N)] and the chain must satisfy
/// N > p^2 and p^p >= N (kInvalidParams otherwise, naming the override).
/// d is the smallest integer with p^{d+1} >= N, clamped to >= 1.
ComposedParams composed_params(std::size_t s, std::uint64_t N, std::optional<std::uint64_t> p_override);

/// golomb_phase(p) * weil(p, d, N); m x N with m = 6p^2 - 6p + 1.
Matrix composed(std::size_t s, std::uint64_t N, std::optional<std::uint64_t> p_override = std::nullopt);

}  // namespace ripforge
