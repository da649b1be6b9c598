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

#include "ripforge/matrix.hpp"

namespace ripforge {

/// Both sides of a norm identity for a unimodular matrix B and vector x.
/// For the l4 identity, `formula_value` uses the Sigma_1 form and
/// `formula_value_split` the squared-pair sum plus Sigma_2; for l2 the split
/// value equals the formula value and both sigmas are zero.
struct IdentityReport {
  double direct_value = 0.0;
  double formula_value = 0.0;
  double formula_value_split = 0.0;
  cplx sigma1{};
  cplx sigma2{};
  double abs_gap = 0.0;
  double abs_gap_split = 0.0;
};

inline constexpr double kUnimodularTolerance = 1e-12;
inline constexpr std::size_t kMaxL4Columns = 32;

/// ||Bx||_2^2 against q||x||_2^2 + sum_{k != k'} (sum_j conj(B_jk) B_jk') conj(x_k) x_k'.
/// kNotUnimodular unless every |B_jk| = 1 within 1e-12.
IdentityReport l2_identity(const Matrix& B, const Vector& x);

/// ||Bx||_4^4 against 2||x||_2^2 ||Bx||_2^2 - q||x||_4^4 + Sigma_1 and against
/// the same with Sigma_1 split into the squared-pair sum plus Sigma_2. The
/// sigma sums are enumerated over ordered pairs of ordered pairs, quartic in
/// B.cols() (kTooManyColumns above 32).
IdentityReport l4_identity(const Matrix& B, const Vector& x);

/// ||y||_2^3 / ||y||_4^2, a lower bound for ||y||_1. kZeroVector on y = 0.
double holder_floor(const Vector& y);

struct EmbeddingRatios {
  double r1;
  double r2;
  double r4;
};

/// ||Ax||_e / ||x||_2 for e = 1, 2, 4.
EmbeddingRatios embedding_ratios(const Matrix& A, const Vector& x);

}  // namespace ripforge
