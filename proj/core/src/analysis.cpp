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

#include "ripforge/analysis.hpp"

#include <cmath>
#include <string>

#include "ripforge/error.hpp"
#include "ripforge/parallel.hpp"

namespace ripforge {
namespace {

void require_unimodular(const Matrix& B) {
  for (std::size_t j = 0; j < B.rows(); ++j) {
    for (std::size_t k = 0; k < B.cols(); ++k) {
      if (std::abs(std::abs(B(j, k)) - 1.0) > kUnimodularTolerance) {
        throw Error(ErrorCode::kNotUnimodular, "entry (" + std::to_string(j) + ", " + std::to_string(k) +
                                                   ") has modulus " + std::to_string(std::abs(B(j, k))));
      }
    }
  }
}

void require_length(const Matrix& B, const Vector& x) {
  if (x.size() != B.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length " + std::to_string(x.size()) + " != " +
                                                   std::to_string(B.cols()) + " columns");
  }
}

double pow4_sum(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z) * std::norm(z);
  return s;
}

double squared_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

// Ordered pairs (k, k') with k != k', in row-major order.
struct OrderedPair {
  std::size_t k;
  std::size_t kp;
};

std::vector<OrderedPair> ordered_pairs(std::size_t r) {
  std::vector<OrderedPair> pairs;
  pairs.reserve(r * (r - 1));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t kp = 0; kp < r; ++kp) {
      if (k != kp) pairs.push_back({k, kp});
    }
  }
  return pairs;
}

}  // namespace

IdentityReport l2_identity(const Matrix& B, const Vector& x) {
  require_length(B, x);
  require_unimodular(B);
  const Vector Bx = matvec(B, x);
  const std::size_t q = B.rows();
  const std::size_t r = B.cols();

  cplx cross = 0.0;
  for (const auto& [k, kp] : ordered_pairs(r)) {
    cplx gram = 0.0;
    for (std::size_t j = 0; j < q; ++j) gram += std::conj(B(j, k)) * B(j, kp);
    cross += gram * std::conj(x[k]) * x[kp];
  }

  IdentityReport rep;
  rep.direct_value = squared_norm(Bx.entries());
  rep.formula_value = static_cast<double>(q) * squared_norm(x.entries()) + cross.real();
  rep.formula_value_split = rep.formula_value;
  rep.abs_gap = std::abs(rep.direct_value - rep.formula_value);
  rep.abs_gap_split = rep.abs_gap;
  return rep;
}

IdentityReport l4_identity(const Matrix& B, const Vector& x) {
  require_length(B, x);
  if (B.cols() > kMaxL4Columns) {
    throw Error(ErrorCode::kTooManyColumns,
                std::to_string(B.cols()) + " columns; the quartic enumeration is capped at 32");
  }
  require_unimodular(B);
  const Vector Bx = matvec(B, x);
  const std::size_t q = B.rows();
  const std::size_t r = B.cols();
  const auto pairs = ordered_pairs(r);
  const std::size_t np = pairs.size();

  // row_products[a * q + j] = conj(B_jk) B_jk' and xprod[a] = conj(x_k) x_k' for pair a = (k, k').
  std::vector<cplx> row_products(np * q);
  std::vector<cplx> xprod(np);
  for (std::size_t a = 0; a < np; ++a) {
    const auto [k, kp] = pairs[a];
    for (std::size_t j = 0; j < q; ++j) row_products[a * q + j] = std::conj(B(j, k)) * B(j, kp);
    xprod[a] = std::conj(x[k]) * x[kp];
  }

  // Sum over (k != k') != (l != l') of (sum_j conj(B_jk) B_jk' B_jl conj(B_jl')) conj(x_k) x_k' x_l conj(x_l'),
  // split by whether (l, l') is the reversal (k', k).
  struct Partial {
    cplx reversed{};
    cplx other{};
    Partial operator+(const Partial& o) const { return {reversed + o.reversed, other + o.other}; }
  };
  const Partial sums = parallel_sum<Partial>(np, [&](std::size_t begin, std::size_t end) {
    Partial acc;
    for (std::size_t a = begin; a < end; ++a) {
      const cplx* pa = &row_products[a * q];
      for (std::size_t b = 0; b < np; ++b) {
        if (b == a) continue;
        const cplx* pb = &row_products[b * q];
        cplx coeff = 0.0;
        for (std::size_t j = 0; j < q; ++j) coeff += pa[j] * std::conj(pb[j]);
        const cplx term = coeff * xprod[a] * std::conj(xprod[b]);
        if (pairs[b].k == pairs[a].kp && pairs[b].kp == pairs[a].k) {
          acc.reversed += term;
        } else {
          acc.other += term;
        }
      }
    }
    return acc;
  });

  cplx squared_pairs = 0.0;
  for (const auto& [k, kp] : pairs) {
    cplx coeff = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
      const cplx bk = std::conj(B(j, k));
      coeff += bk * bk * B(j, kp) * B(j, kp);
    }
    const cplx xk = std::conj(x[k]);
    squared_pairs += coeff * xk * xk * x[kp] * x[kp];
  }

  const double x2 = squared_norm(x.entries());
  const double base = 2.0 * x2 * squared_norm(Bx.entries()) - static_cast<double>(q) * pow4_sum(x.entries());

  IdentityReport rep;
  rep.sigma1 = sums.reversed + sums.other;
  rep.sigma2 = sums.other;
  rep.direct_value = pow4_sum(Bx.entries());
  rep.formula_value = base + rep.sigma1.real();
  rep.formula_value_split = base + (squared_pairs + rep.sigma2).real();
  rep.abs_gap = std::abs(rep.direct_value - rep.formula_value);
  rep.abs_gap_split = std::abs(rep.direct_value - rep.formula_value_split);
  return rep;
}

double holder_floor(const Vector& y) {
  const double n2 = norm(y, 2.0);
  if (n2 == 0.0) throw Error(ErrorCode::kZeroVector, "holder_floor of the zero vector");
  const double n4 = norm(y, 4.0);
  return n2 * n2 * n2 / (n4 * n4);
}

EmbeddingRatios embedding_ratios(const Matrix& A, const Vector& x) {
  if (x.size() != A.cols()) throw Error(ErrorCode::kDimensionMismatch, "embedding_ratios: length mismatch");
  const double nx = norm(x, 2.0);
  if (nx == 0.0) throw Error(ErrorCode::kZeroVector, "embedding_ratios of the zero vector");
  const Vector Ax = matvec(A, x);
  return {norm(Ax, 1.0) / nx, norm(Ax, 2.0) / nx, norm(Ax, 4.0) / nx};
}

}  // namespace ripforge
