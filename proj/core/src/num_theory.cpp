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

#include "ripforge/num_theory.hpp"

#include <array>
#include <string>

#include "ripforge/error.hpp"

namespace ripforge {
namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    e >>= 1U;
  }
  return result;
}

}  // namespace

// Miller-Rabin with the first twelve primes as witnesses, which is exact for
// n < 3.3e24 and therefore for every 64-bit n.
bool is_prime(std::uint64_t n) noexcept {
  constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (std::uint64_t a : kWitnesses) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidModulus, std::to_string(p) + " is not prime");
  if (p > kMaxModulus) {
    throw Error(ErrorCode::kInvalidModulus, std::to_string(p) + " exceeds the supported modulus 2^31-1");
  }
}

PrimeModulus prime_in_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(ErrorCode::kInvalidParams, "prime_in_range requires lo <= hi");
  for (std::uint64_t n = lo;; ++n) {
    if (is_prime(n)) return PrimeModulus(n);
    if (n == hi) break;
  }
  throw Error(ErrorCode::kNoPrimeInRange,
              "no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::uint64_t square_mod(std::uint64_t k, const PrimeModulus& p) {
  if (k >= p.value()) throw Error(ErrorCode::kInvalidParams, "square_mod requires 0 <= k < p");
  return p.mul(k, k);
}

PolyOverFp::PolyOverFp(PrimeModulus modulus, std::vector<std::uint64_t> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::kInvalidParams, "polynomial needs at least one coefficient");
  for (std::uint64_t c : coeffs_) {
    if (c >= modulus_.value()) {
      throw Error(ErrorCode::kInvalidParams, "coefficient " + std::to_string(c) + " not reduced mod p");
    }
  }
}

std::uint64_t poly_eval(const PolyOverFp& f, std::uint64_t k) {
  const PrimeModulus& p = f.modulus();
  if (k >= p.value()) throw Error(ErrorCode::kInvalidParams, "poly_eval requires 0 <= k < p");
  std::uint64_t acc = 0;
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = p.add(p.mul(acc, k), *it);
  return acc;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) noexcept {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return UINT64_MAX;
    result *= base;
  }
  return result;
}

std::vector<PolyOverFp> enumerate_polys(const PrimeModulus& p, std::size_t d, std::uint64_t count) {
  const std::uint64_t family = saturating_pow(p.value(), d + 1);
  if (count > family) {
    throw Error(ErrorCode::kCountExceedsFamily, "requested " + std::to_string(count) +
                                                    " polynomials but only p^(d+1) = " +
                                                    std::to_string(family) + " exist");
  }
  std::vector<PolyOverFp> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<std::uint64_t> coeffs(d + 1);
    std::uint64_t rest = i;
    for (auto& c : coeffs) {
      c = rest % p.value();
      rest /= p.value();
    }
    out.emplace_back(p, std::move(coeffs));
  }
  return out;
}

}  // namespace ripforge
