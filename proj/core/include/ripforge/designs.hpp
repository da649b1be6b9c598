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
#include <string_view>
#include <vector>

#include "ripforge/matrix.hpp"

namespace ripforge {

inline constexpr double kPointSetTolerance = 1e-12;

/// Unit vectors x_1..x_N in K^n with nonnegative weights summing to one.
/// Points are stored row-major (N x n).
class WeightedPointSet {
 public:
  /// kInvalidPointSet if a point is not unit-norm or the weights do not form
  /// a probability vector (both within 1e-12).
  WeightedPointSet(Field field, std::size_t dim, std::vector<cplx> points, std::vector<double> weights);

  Field field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const cplx> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<cplx> points_;
  std::vector<double> weights_;
};

/// delta_{n,2k} = int |<x, y>|^{2k} dsigma(y):
///   real:    (2k-1)!! / (n (n+2) ... (n+2k-2))
///   complex: k! / (n (n+1) ... (n+k-1))
double delta_closed_form(std::size_t n, std::size_t k, Field field);

struct MonteCarloEstimate {
  double estimate;
  double standard_error;
};

/// Average of |<e_1, y>|^{2k} over uniform sphere samples (normalized Gaussian
/// vectors); samples >= 1000. Deterministic in seed.
MonteCarloEstimate delta_monte_carlo(std::size_t n, std::size_t k, Field field, std::uint64_t samples,
                                     std::uint64_t seed);

/// sum_{i,j} tau_i tau_j |<x_i, x_j>|^{2k}.
double frame_potential(const WeightedPointSet& ps, std::size_t k);

/// frame_potential - delta_{n,2k}; equals the squared distance of the
/// weighted moment tensor to the sphere's distribution tensor, so it is
/// nonnegative up to rounding.
double design_defect(const WeightedPointSet& ps, std::size_t k);

/// ||sum_i tau_i x_i x_i^* - I/n||_F^2 computed with the explicit tensor.
/// Only k = 1 (kUnsupportedK otherwise); n <= 64.
double tensor_defect_explicit(const WeightedPointSet& ps, std::size_t k);

struct DesignFromMatrix {
  WeightedPointSet points;
  double S;
};

/// Rows a_i^* of A become x_i = a_i / ||a_i||_2 with tau_i = ||a_i||_2^{2k} / S,
/// S = sum_i ||a_i||_2^{2k}. kZeroRow on a vanishing row.
DesignFromMatrix matrix_to_design(const Matrix& A, std::size_t k);

/// Point set as a CMX-ready matrix (rows = points, weights in meta).
Matrix point_set_to_matrix(const WeightedPointSet& ps);
/// Inverse of point_set_to_matrix; uniform weights when meta has none.
WeightedPointSet point_set_from_matrix(const Matrix& A);

enum class ChainDirection { k2To3, k3To1, k1To2 };
ChainDirection parse_chain_direction(std::string_view text);

/// Tolerance conversions between the almost-isometry (eps1), frame-potential
/// (eps2) and tensor (eps3) formulations:
///   2to3: eps3 = sqrt(eps2)
///   3to1: eps1 = eps3 / delta_{n,2k}
///   1to2: eps2 = 4 eps1 delta_{n,2k}, valid for eps1 <= 1/2 (kEpsilonOutOfRange)
double epsilon_chain(ChainDirection direction, double input_eps, std::size_t n, std::size_t k, Field field);

}  // namespace ripforge
