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

#include "ripforge/matrix.hpp"

namespace ripforge {

struct RecoveryResult {
  Vector estimate;
  std::size_t iterations;
  std::vector<double> residual_history;  // ||y - A x_t||_2 after each iteration
  bool converged;
};

/// Keeps the s entries of largest modulus (ties go to the lower index) and
/// zeroes the rest.
void hard_threshold(std::span<cplx> x, std::size_t s);

/// Largest squared singular value of A by power iteration on A^* A from a
/// fixed start vector.
double spectral_norm_squared(const Matrix& A, std::size_t iterations = 200, double tol = 1e-12);

/// Iterative hard thresholding x <- H_s(x + mu A^*(y - A x)) from x = 0 with
/// mu = 1 / ||A||_2^2. Stops once ||y - Ax||_2 <= tol ||y||_2 or after
/// max_iter iterations. kZeroColumn if A has a vanishing column.
RecoveryResult iht(const Matrix& A, const Vector& y, std::size_t s, std::size_t max_iter, double tol);

}  // namespace ripforge
