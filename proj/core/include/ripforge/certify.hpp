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

#include <array>
#include <cstdint>
#include <optional>

#include "ripforge/error.hpp"
#include "ripforge/matrix.hpp"
#include "ripforge/random.hpp"

namespace ripforge {

/// max_{j != l} |<a_j, a_l>| over unit-normalized columns. kZeroColumn if a
/// column vanishes; kInvalidParams for fewer than two columns.
double coherence(const Matrix& A);

/// sqrt(8 ln N), the union-bound choice for Rademacher draws; N >= 2.
double default_kappa(std::uint64_t N);

/// Column-packed +-1 matrix: bit set means -1. Pair and quadruple sums are
/// m - 2 popcount(xor), so they are exact integers.
class SignMatrix {
 public:
  /// kNotSignMatrix unless every entry is exactly +1 or -1.
  explicit SignMatrix(const Matrix& A);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t pair_sum(std::size_t k, std::size_t kp) const noexcept;
  std::int64_t quad_sum(std::size_t k, std::size_t kp, std::size_t l, std::size_t lp) const noexcept;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;  // column-major, words_ per column
};

struct ConditionA {
  bool pass;
  std::int64_t max_pair_sum;
  std::array<std::size_t, 2> witness;
  double threshold;  // kappa sqrt(m)
};

struct ConditionB {
  bool pass;
  std::int64_t max_quad_sum;
  std::array<std::size_t, 4> witness;
  double threshold;
};

/// |sum_j A_jk A_jk'| <= kappa sqrt(m) for all distinct k, k'.
ConditionA condition_a(const SignMatrix& A, double kappa);
ConditionA condition_a(const Matrix& A, double kappa);

/// |sum_j A_jk A_jk' A_jl A_jl'| <= kappa sqrt(m) for all distinct k, k', l, l'.
/// The product is symmetric, so only the C(N, 4) unordered subsets are
/// visited. Vacuous pass for N < 4.
ConditionB condition_b(const SignMatrix& A, double kappa);
ConditionB condition_b(const Matrix& A, double kappa);

/// Arithmetic of the sign-matrix l2 -> l1 embedding bound: with m >= kappa^2 s^4 / delta^2,
/// alpha m ||x||_2 <= ||Ax||_1 <= beta m ||x||_2 on s-sparse x.
struct Theorem1Bound {
  std::uint64_t m_required;
  double gamma;
  double alpha;
  double beta;
};

/// kInvalidDelta unless 0 < delta < 1.
Theorem1Bound theorem1_bound(double kappa, double delta, std::size_t s);

/// Full certificate for a sign matrix.
struct CertReport {
  double coherence;
  double kappa;
  std::int64_t max_pair_sum;
  std::int64_t max_quad_sum;
  std::array<std::size_t, 2> pair_witness;
  std::array<std::size_t, 4> quad_witness;
  bool cond_a_pass;
  bool cond_b_pass;
  double delta;
  std::size_t s;
  std::uint64_t m;
  std::uint64_t m_required;
  double distortion_bound;
  double alpha;
  double beta;

  /// Conditions (a) and (b) hold and m >= m_required.
  bool certified() const noexcept { return cond_a_pass && cond_b_pass && m >= m_required; }
};

CertReport certify_sign_matrix(const Matrix& A, double kappa, double delta, std::size_t s);
nlohmann::ordered_json to_json(const CertReport& report);

struct LasVegasResult {
  Matrix matrix;
  std::uint64_t rounds_used;
  double kappa;
};

/// Raised when every round fails; carries the witnesses of the attempt with
/// the smallest combined excess over the threshold.
class RoundsExhaustedError : public Error {
 public:
  RoundsExhaustedError(std::uint64_t rounds, ConditionA best_a, ConditionB best_b, std::uint64_t best_round);

  std::uint64_t rounds;
  ConditionA best_a;
  ConditionB best_b;
  std::uint64_t best_round;
};

/// Draws rademacher(m, N, derive_seed(seed, t)) for t = 1, 2, ... and returns
/// the first draw satisfying conditions (a) and (b). Rounds may be evaluated
/// speculatively in parallel; the lowest successful round is returned.
LasVegasResult las_vegas(std::size_t m, std::size_t N, std::optional<double> kappa, std::uint64_t max_rounds,
                         std::uint64_t seed);

/// Subset-count cap for exact_ric.
inline constexpr std::uint64_t kMaxRicSubsets = 1'000'000;

/// Restricted isometry constant of the column-normalized matrix: the maximum
/// over all s-subsets S of max |eig(A_S^* A_S) - 1|. kTooLarge if C(N, s) > 10^6.
double exact_ric(const Matrix& A, std::size_t s);

/// Sampled ratios ||Ax||_1 / ||x||_2 over random s-sparse x (uniform support,
/// Gaussian nonzeros). The empirical distortion is only a lower bound on the
/// true distortion.
struct ProbeReport {
  std::uint64_t trials;
  std::size_t s;
  double min_ratio;
  double max_ratio;
  double empirical_distortion;
};

ProbeReport probe_l1(const Matrix& A, std::size_t s, std::uint64_t trials, std::uint64_t seed);
nlohmann::ordered_json to_json(const ProbeReport& report);

/// Random s-sparse vector of length n: support drawn uniformly without
/// replacement, nonzeros standard (complex) Gaussian.
Vector random_sparse(std::size_t n, std::size_t s, Field field, std::uint64_t seed);
Vector random_sparse(std::size_t n, std::size_t s, Field field, Rng& rng);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace ripforge
