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
#include <vector>

namespace ripforge {

/// Largest modulus accepted anywhere in the library.
inline constexpr std::uint64_t kMaxModulus = (1ULL << 31) - 1;

/// Deterministic primality test, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// A prime p, verified at construction (kInvalidModulus otherwise).
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }

  std::uint64_t reduce(std::uint64_t v) const noexcept { return v % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return (a + b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return (a * b) % p_; }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
};

/// Smallest prime in [lo, hi]; kNoPrimeInRange if there is none.
PrimeModulus prime_in_range(std::uint64_t lo, std::uint64_t hi);

/// k^2 mod p for 0 <= k < p.
std::uint64_t square_mod(std::uint64_t k, const PrimeModulus& p);

/// Polynomial c_0 + c_1 X + ... + c_d X^d over F_p.
class PolyOverFp {
 public:
  PolyOverFp(PrimeModulus modulus, std::vector<std::uint64_t> coeffs);

  const PrimeModulus& modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree_bound() const noexcept { return coeffs_.size() - 1; }

  friend bool operator==(const PolyOverFp&, const PolyOverFp&) = default;

 private:
  PrimeModulus modulus_;
  std::vector<std::uint64_t> coeffs_;
};

/// Horner evaluation of f at k in [0, p), result in [0, p).
std::uint64_t poly_eval(const PolyOverFp& f, std::uint64_t k);

/// p^e, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) noexcept;

/// The first `count` polynomials of degree <= d, in lexicographic order of
/// (c_0, ..., c_d) with c_0 varying fastest. Index i maps to the base-p digits
/// of i. kCountExceedsFamily if count > p^(d+1).
std::vector<PolyOverFp> enumerate_polys(const PrimeModulus& p, std::size_t d, std::uint64_t count);

}  // namespace ripforge
