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

#include "ripforge/constructors.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ripforge/error.hpp"
#include "ripforge/golomb.hpp"
#include "ripforge/parallel.hpp"
#include "ripforge/random.hpp"

namespace ripforge {
namespace {

// exp(2 pi i r / n) for an already reduced residue r in [0, n).
cplx unit_phase(std::uint64_t r, std::uint64_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void check_size(std::uint64_t rows, std::uint64_t cols, std::string_view what) {
  if (rows == 0 || cols == 0 || rows > kMaxEntries / cols) {
    throw Error(ErrorCode::kTooLarge, std::string(what) + ": " + std::to_string(rows) + " x " +
                                          std::to_string(cols) + " exceeds the supported size");
  }
}

PrimeModulus require_prime(std::uint64_t p, std::uint64_t min, std::string_view what, ErrorCode code) {
  if (p < min || !is_prime(p)) {
    throw Error(code, std::string(what) + " requires a prime >= " + std::to_string(min) + ", got " +
                          std::to_string(p));
  }
  return PrimeModulus(p);
}

void check_degree(std::uint64_t p, std::size_t d, std::string_view what) {
  if (d < 1 || d >= p) {
    throw Error(ErrorCode::kInvalidParams,
                std::string(what) + " requires 1 <= d < p, got d = " + std::to_string(d) + ", p = " + std::to_string(p));
  }
}

Meta poly_family_meta() { return "lex (c_0,...,c_d), c_0 least significant"; }

}  // namespace

Matrix rademacher(std::size_t m, std::size_t N, std::uint64_t seed) {
  check_size(m, N, "rademacher");
  Rng rng(seed);
  std::vector<cplx> e(m * N);
  for (cplx& v : e) v = rng.sign();
  Meta meta = make_meta("rademacher", {{"m", m}, {"N", N}});
  meta["seed"] = seed;
  return Matrix(Field::kReal, m, N, std::move(e), std::move(meta));
}

Matrix weil(std::uint64_t p, std::size_t d, std::optional<std::uint64_t> columns) {
  const PrimeModulus mod = require_prime(p, 2, "weil", ErrorCode::kInvalidParams);
  check_degree(p, d, "weil");
  const std::uint64_t family = saturating_pow(p, d + 1);
  const std::uint64_t N = columns.value_or(family);
  if (N == 0) throw Error(ErrorCode::kInvalidParams, "weil: column count must be >= 1");
  if (N > family) {
    throw Error(ErrorCode::kCountExceedsFamily,
                "weil: " + std::to_string(N) + " columns requested, p^(d+1) = " + std::to_string(family));
  }
  check_size(p, N, "weil");
  const auto polys = enumerate_polys(mod, d, N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  std::vector<cplx> e(p * N);
  parallel_for(N, [&](std::size_t col) {
    for (std::uint64_t k = 0; k < p; ++k) {
      e[k * N + col] = scale * unit_phase(mod.mul(k, poly_eval(polys[col], k)), p);
    }
  });
  Meta meta = make_meta("weil", {{"p", p}, {"d", d}, {"N", N}});
  meta["params"]["column_family"] = poly_family_meta();
  return Matrix(Field::kComplex, p, N, std::move(e), std::move(meta));
}

Matrix alltop(std::uint64_t m) {
  const PrimeModulus mod = require_prime(m, 5, "alltop", ErrorCode::kInvalidParams);
  check_size(m, m * m, "alltop");
  const std::uint64_t N = m * m;
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cplx> e(m * N);
  parallel_for(m, [&](std::size_t j) {
    for (std::uint64_t x = 0; x < m; ++x) {
      const std::uint64_t t = mod.reduce(j + x);
      const std::uint64_t cube = mod.mul(mod.mul(t, t), t);
      for (std::uint64_t y = 0; y < m; ++y) {
        e[j * N + x * m + y] = scale * unit_phase(mod.add(cube, mod.mul(y, j)), m);
      }
    }
  });
  return Matrix(Field::kComplex, m, N, std::move(e), make_meta("alltop", {{"m", m}}));
}

Matrix devore(std::uint64_t p, std::size_t d) {
  const PrimeModulus mod = require_prime(p, 2, "devore", ErrorCode::kInvalidParams);
  check_degree(p, d, "devore");
  const std::uint64_t N = saturating_pow(p, d + 1);
  check_size(p * p, N, "devore");
  const auto polys = enumerate_polys(mod, d, N);
  const double value = 1.0 / std::sqrt(static_cast<double>(p));
  std::vector<cplx> e(p * p * N);
  parallel_for(N, [&](std::size_t col) {
    for (std::uint64_t a = 0; a < p; ++a) e[(a * p + poly_eval(polys[col], a)) * N + col] = value;
  });
  Meta meta = make_meta("devore", {{"p", p}, {"d", d}, {"N", N}});
  meta["params"]["column_family"] = poly_family_meta();
  return Matrix(Field::kReal, p * p, N, std::move(e), std::move(meta));
}

std::uint64_t golomb_rows(std::uint64_t p) noexcept { return 6 * p * p - 6 * p + 1; }

Matrix golomb_phase(std::uint64_t p) {
  const PrimeModulus mod = require_prime(p, 3, "golomb_phase", ErrorCode::kInvalidModulus);
  if (p > 10'000) throw Error(ErrorCode::kTooLarge, "golomb_phase supports p <= 10^4");
  const GolombRuler ruler = build_ruler(mod);
  const std::uint64_t m = golomb_rows(p);
  check_size(m, p, "golomb_phase");
  std::vector<cplx> e(m * p);
  parallel_for(
      m,
      [&](std::size_t j) {
        for (std::uint64_t k = 0; k < p; ++k) {
          const auto g = static_cast<std::uint64_t>(ruler.marks[k]);
          e[j * p + k] = unit_phase((j * g) % m, m);
        }
      },
      64);
  Meta meta = make_meta("golomb_phase", {{"p", p}, {"m", m}});
  meta["params"]["marks"] = ruler.marks;
  return Matrix(Field::kComplex, m, p, std::move(e), std::move(meta));
}

Matrix golomb_stacked(std::uint64_t p) {
  const Matrix phase = golomb_phase(p);
  const std::uint64_t m = phase.rows();
  const double top = std::pow(2.0 * static_cast<double>(m), -0.25);
  const double bottom = std::pow(2.0, -0.25);
  std::vector<cplx> e((m + p) * p);
  for (std::size_t i = 0; i < m * p; ++i) e[i] = top * phase.entries()[i];
  for (std::uint64_t k = 0; k < p; ++k) e[(m + k) * p + k] = bottom;
  return Matrix(Field::kComplex, m + p, p, std::move(e), make_meta("golomb_stacked", {{"p", p}, {"m", m}}));
}

ComposedParams composed_params(std::size_t s, std::uint64_t N, std::optional<std::uint64_t> p_override) {
  if (s < 1 || N < 1) throw Error(ErrorCode::kInvalidParams, "composed requires s >= 1 and N >= 1");
  ComposedParams out{};
  if (p_override) {
    require_prime(*p_override, 3, "composed --p", ErrorCode::kInvalidParams);
    out.p = *p_override;
    out.overridden = true;
  } else {
    const double ln_n = std::log(static_cast<double>(N));
    const auto l2 = static_cast<std::uint64_t>(std::ceil(ln_n * ln_n));
    const std::uint64_t lo = 9 * s * s * l2;
    const std::uint64_t hi = 18 * s * s * l2;
    const std::string range = "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    std::optional<std::uint64_t> p;
    if (lo >= 3 && hi <= kMaxModulus) {
      try {
        p = prime_in_range(lo, hi).value();
      } catch (const Error&) {
      }
    }
    if (!p) {
      throw Error(ErrorCode::kInvalidParams,
                  "no usable prime in the required range " + range + "; pass an explicit p override");
    }
    __extension__ typedef unsigned __int128 u128;
    const bool n_above_p2 = static_cast<u128>(N) > static_cast<u128>(*p) * *p;
    const bool pp_covers = saturating_pow(*p, *p) >= N;
    if (!n_above_p2 || !pp_covers) {
      throw Error(ErrorCode::kInvalidParams,
                  "parameter chain infeasible: p = " + std::to_string(*p) + " from range " + range +
                      " must satisfy N > p^2 and p^p >= N (N = " + std::to_string(N) +
                      "); pass an explicit p override");
    }
    out.p = *p;
    out.overridden = false;
  }
  std::size_t d = 0;
  while (saturating_pow(out.p, d + 1) < N) ++d;
  out.d = std::max<std::size_t>(d, 1);
  if (out.d >= out.p) {
    throw Error(ErrorCode::kCountExceedsFamily, "N = " + std::to_string(N) + " exceeds p^p = " +
                                                    std::to_string(saturating_pow(out.p, out.p)) +
                                                    " polynomials of degree < p (p = " + std::to_string(out.p) + ")");
  }
  out.m = golomb_rows(out.p);
  return out;
}

Matrix composed(std::size_t s, std::uint64_t N, std::optional<std::uint64_t> p_override) {
  const ComposedParams params = composed_params(s, N, p_override);
  check_size(params.m, N, "composed");
  const Matrix product = matmul(golomb_phase(params.p), weil(params.p, params.d, N));
  Meta meta = make_meta("composed", {{"s", s},
                                     {"N", N},
                                     {"p", params.p},
                                     {"d", params.d},
                                     {"m", params.m},
                                     {"p_overridden", params.overridden},
                                     {"column_family", poly_family_meta()}});
  return product.with_meta(std::move(meta));
}

}  // namespace ripforge
