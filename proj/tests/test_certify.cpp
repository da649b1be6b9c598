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

#include <gtest/gtest.h>

#include <bit>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "ripforge/certify.hpp"
#include "ripforge/constructors.hpp"
#include "ripforge/error.hpp"

namespace ripforge {
namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidParams;
}

Matrix sign_matrix(std::size_t m, std::size_t n, const std::vector<int>& signs) {
  std::vector<cplx> e(signs.begin(), signs.end());
  return Matrix(Field::kReal, m, n, e);
}

// Plain double loops with int arithmetic, no bit packing.
std::int64_t brute_pair_max(const Matrix& A) {
  std::int64_t best = 0;
  for (std::size_t k = 0; k < A.cols(); ++k)
    for (std::size_t kp = 0; kp < A.cols(); ++kp) {
      if (k == kp) continue;
      std::int64_t s = 0;
      for (std::size_t j = 0; j < A.rows(); ++j) s += static_cast<int>(A(j, k).real()) * static_cast<int>(A(j, kp).real());
      best = std::max(best, std::abs(s));
    }
  return best;
}

std::int64_t brute_quad_max(const Matrix& A) {
  std::int64_t best = 0;
  const std::size_t n = A.cols();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          std::int64_t s = 0;
          for (std::size_t j = 0; j < A.rows(); ++j)
            s += static_cast<int>(A(j, a).real() * A(j, b).real() * A(j, c).real() * A(j, d).real());
          best = std::max(best, std::abs(s));
        }
  return best;
}

TEST(Coherence, Examples) {
  EXPECT_EQ(coherence(Matrix::identity(4)), 0.0);
  EXPECT_NEAR(coherence(alltop(5)), 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_LE(coherence(weil(5, 2)), 2.0 / std::sqrt(5.0));
  EXPECT_EQ(code_of([] { coherence(Matrix(Field::kReal, 2, 2, {1.0, 0.0, 1.0, 0.0})); }), ErrorCode::kZeroColumn);
}

TEST(Coherence, MatchesBruteForceAndIgnoresScaling) {
  oracle::TestRng rng(1);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 2 + rng.index(10), n = 2 + rng.index(10);
    const Matrix A(Field::kComplex, m, n, rng.cvec(m * n));
    double ref = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto ca = A.column(a), cb = A.column(b);
        cplx ip = 0.0;
        for (std::size_t j = 0; j < m; ++j) ip += std::conj(ca[j]) * cb[j];
        ref = std::max(ref, std::abs(ip) / (oracle::lp_norm(ca, 2.0) * oracle::lp_norm(cb, 2.0)));
      }
    ASSERT_NEAR(coherence(A), ref, 1e-12);
  }
}

TEST(Coherence, GolombPhaseIsZero) {
  for (std::uint64_t p : {3, 5, 7}) EXPECT_LE(coherence(golomb_phase(p)), 1e-12);
}

TEST(DefaultKappa, Values) {
  EXPECT_NEAR(default_kappa(16), 4.7096, 1e-4);
  const double k = default_kappa(1000);
  EXPECT_NEAR(k * k / 2.0, 4.0 * std::log(1000.0), 1e-12);
  EXPECT_EQ(code_of([] { default_kappa(1); }), ErrorCode::kInvalidParams);
}

TEST(ConditionA, Examples) {
  const auto ok = condition_a(sign_matrix(2, 2, {1, 1, 1, -1}), 0.1);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.max_pair_sum, 0);

  std::vector<int> dup(200);
  oracle::TestRng rng(2);
  for (std::size_t j = 0; j < 100; ++j) dup[2 * j] = dup[2 * j + 1] = rng.normal() > 0 ? 1 : -1;
  const auto bad = condition_a(sign_matrix(100, 2, dup), 5.0);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.max_pair_sum, 100);
  EXPECT_DOUBLE_EQ(bad.threshold, 50.0);
  EXPECT_EQ(bad.witness, (std::array<std::size_t, 2>{0, 1}));
}

TEST(ConditionA, RejectsNonSign) {
  EXPECT_EQ(code_of([] { condition_a(Matrix::identity(2), 1.0); }), ErrorCode::kNotSignMatrix);
  EXPECT_EQ(code_of([] { condition_b(golomb_phase(3), 1.0); }), ErrorCode::kNotSignMatrix);
}

TEST(ConditionB, VacuousBelowFourColumns) {
  const auto r = condition_b(rademacher(10, 3, 1), 0.001);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_quad_sum, 0);
}

TEST(ConditionB, HadamardProductCounterexample) {
  oracle::TestRng rng(3);
  std::vector<int> e(100 * 4);
  for (std::size_t j = 0; j < 100; ++j) {
    const int c1 = rng.normal() > 0 ? 1 : -1, c2 = rng.normal() > 0 ? 1 : -1, c3 = rng.normal() > 0 ? 1 : -1;
    e[j * 4 + 0] = c1;
    e[j * 4 + 1] = c2;
    e[j * 4 + 2] = c3;
    e[j * 4 + 3] = c1 * c2 * c3;  // c1 o c2 = c3 o c4
  }
  const auto r = condition_b(sign_matrix(100, 4, e), 5.0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.max_quad_sum, 100);
  EXPECT_EQ(r.witness, (std::array<std::size_t, 4>{0, 1, 2, 3}));
}

TEST(Conditions, ExactAgainstBruteForce) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix A = rademacher(7 + seed * 13, 8, seed);
    const auto a = condition_a(A, 2.0);
    const auto b = condition_b(A, 2.0);
    ASSERT_EQ(a.max_pair_sum, brute_pair_max(A));
    ASSERT_EQ(b.max_quad_sum, brute_quad_max(A));
    const double thr = 2.0 * std::sqrt(static_cast<double>(A.rows()));
    ASSERT_EQ(a.pass, a.max_pair_sum <= thr);
    ASSERT_EQ(b.pass, b.max_quad_sum <= thr);
    const SignMatrix S(A);
    ASSERT_EQ(std::abs(S.pair_sum(a.witness[0], a.witness[1])), a.max_pair_sum);
    ASSERT_EQ(std::abs(S.quad_sum(b.witness[0], b.witness[1], b.witness[2], b.witness[3])), b.max_quad_sum);
  }
}

TEST(Conditions, PassRatesAtDefaultKappa) {
  const double kappa = default_kappa(16);
  int pass_a = 0, fail_b = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const SignMatrix S(rademacher(64, 16, seed));
    if (seed < 200 && condition_a(S, kappa).pass) ++pass_a;
    if (!condition_b(S, kappa).pass) ++fail_b;
  }
  EXPECT_GE(pass_a, 180);
  EXPECT_LE(fail_b / 500.0, 1.0 / 12.0 + 0.05);
}

TEST(Theorem1Bound, Arithmetic) {
  const double kappa = std::sqrt(8.0 * std::log(32.0));
  const auto b = theorem1_bound(kappa, 0.5, 2);
  EXPECT_EQ(b.m_required, 1775u);
  EXPECT_EQ(b.m_required, static_cast<std::uint64_t>(std::ceil(8.0 * std::log(32.0) * 4.0 * 16.0)));
  EXPECT_NEAR(b.alpha, std::sqrt(0.125 / 4.5), 1e-15);
  EXPECT_NEAR(b.beta, std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(b.gamma, b.beta / b.alpha, 1e-12);
  EXPECT_LE(b.gamma, std::sqrt(3.0) * std::pow(1.5 / 0.5, 1.5) + 1e-12);
  EXPECT_NEAR(theorem1_bound(1.0, 1e-9, 1).gamma, std::sqrt(3.0), 1e-6);
  EXPECT_EQ(code_of([] { theorem1_bound(1.0, 1.0, 1); }), ErrorCode::kInvalidDelta);
  EXPECT_EQ(code_of([] { theorem1_bound(1.0, 0.0, 1); }), ErrorCode::kInvalidDelta);
}

TEST(LasVegas, SucceedsQuicklyAndDeterministically) {
  const auto r = las_vegas(64, 16, std::nullopt, 50, 1);
  EXPECT_GE(r.rounds_used, 1u);
  EXPECT_NEAR(r.kappa, default_kappa(16), 1e-15);
  EXPECT_TRUE(condition_a(r.matrix, r.kappa).pass);
  EXPECT_TRUE(condition_b(r.matrix, r.kappa).pass);
  EXPECT_TRUE(r.matrix.same_entries(rademacher(64, 16, derive_seed(1, r.rounds_used))));
  EXPECT_EQ(r.matrix.meta()["round"], r.rounds_used);
  EXPECT_EQ(r.matrix.meta()["subseed_mixer"], std::string(kSubseedMixer));

  const auto again = las_vegas(64, 16, std::nullopt, 50, 1);
  EXPECT_TRUE(again.matrix.same_entries(r.matrix));
  EXPECT_EQ(again.rounds_used, r.rounds_used);

  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) total += las_vegas(64, 16, std::nullopt, 50, seed).rounds_used;
  EXPECT_LE(total / 100.0, 1.5);
}

TEST(LasVegas, ReturnsFirstPassingRound) {
  const double kappa = 3.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::uint64_t expect = 0;
    for (std::uint64_t t = 1; t <= 200 && expect == 0; ++t) {
      const SignMatrix S(rademacher(64, 16, derive_seed(seed, t)));
      if (condition_a(S, kappa).pass && condition_b(S, kappa).pass) expect = t;
    }
    ASSERT_NE(expect, 0u);
    EXPECT_EQ(las_vegas(64, 16, kappa, 200, seed).rounds_used, expect);
  }
}

TEST(LasVegas, RoundsExhausted) {
  try {
    las_vegas(1, 16, 0.01, 5, 0);
    ADD_FAILURE();
  } catch (const RoundsExhaustedError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRoundsExhausted);
    EXPECT_EQ(e.rounds, 5u);
    EXPECT_FALSE(e.best_a.pass);
    EXPECT_EQ(e.best_a.max_pair_sum, 1);
    EXPECT_GE(e.best_round, 1u);
  }
}

TEST(ExactRic, Examples) {
  EXPECT_NEAR(exact_ric(Matrix::identity(5), 2), 0.0, 1e-12);
  EXPECT_NEAR(exact_ric(Matrix::identity(5), 4), 0.0, 1e-12);
  const Matrix W = weil(5, 2);
  EXPECT_LT(exact_ric(W, 2), 2.0 * coherence(W));
  const Matrix dup(Field::kReal, 3, 3, {1.0, 1.0, 0.0, 2.0, 2.0, 1.0, 0.0, 0.0, 1.0});
  EXPECT_NEAR(exact_ric(dup, 2), 1.0, 1e-12);
  EXPECT_EQ(code_of([] { exact_ric(rademacher(4, 200, 0), 4); }), ErrorCode::kTooLarge);
}

TEST(ExactRic, SEqualsTwoIsCoherence) {
  // 2x2 Gram eigenvalues are 1 +- |<a,b>|.
  for (const Matrix& A : {weil(5, 2), alltop(7), devore(3, 2)}) EXPECT_NEAR(exact_ric(A, 2), coherence(A), 1e-12);
}

TEST(ExactRic, MatchesFullEigensolveOracle) {
  oracle::TestRng rng(5);
  const Matrix A(Field::kComplex, 6, 7, rng.cvec(42));
  double ref = 0.0;
  for (unsigned mask = 0; mask < (1u << 7); ++mask) {
    if (std::popcount(mask) != 3) continue;
    std::vector<std::vector<cplx>> cols;
    for (std::size_t k = 0; k < 7; ++k) {
      if (!(mask >> k & 1u)) continue;
      auto c = A.column(k);
      const double n = oracle::lp_norm(c, 2.0);
      for (auto& z : c) z /= n;
      cols.push_back(c);
    }
    Eigen::Matrix3cd g;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        cplx ip = 0.0;
        for (std::size_t j = 0; j < 6; ++j) ip += std::conj(cols[a][j]) * cols[b][j];
        g(a, b) = ip;
      }
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd>(g).eigenvalues();
    ref = std::max({ref, std::abs(ev.minCoeff() - 1.0), std::abs(ev.maxCoeff() - 1.0)});
  }
  EXPECT_NEAR(exact_ric(A, 3), ref, 1e-10);
}

TEST(ExactRic, BelowCoherenceBound) {
  for (const Matrix& A : {weil(3, 1), weil(5, 2), weil(7, 2), alltop(5), alltop(7), devore(3, 2), devore(5, 2)}) {
    EXPECT_LT(exact_ric(A, 2), 2.0 * coherence(A));
    if (A.cols() <= 50) EXPECT_LT(exact_ric(A, 3), 3.0 * coherence(A));
  }
}

TEST(Probe, GolombDenseWithinBounds) {
  const auto r = probe_l1(golomb_phase(3), 3, 2000, 4);
  EXPECT_GE(r.min_ratio, 37.0 / std::sqrt(2.0) * (1 - 1e-10));
  EXPECT_LE(r.max_ratio, 37.0 * (1 + 1e-10));
  EXPECT_GE(r.empirical_distortion, 1.0);
  EXPECT_EQ(to_json(r)["distortion_is_lower_bound"], true);
}

TEST(Probe, SingleColumnActivationGivesColumnL1) {
  const Matrix A = weil(5, 1);
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 0; k < A.cols(); ++k) {
    const double l1 = oracle::lp_norm(A.column(k), 1.0);
    lo = std::min(lo, l1);
    hi = std::max(hi, l1);
  }
  const auto r = probe_l1(A, 1, 500, 9);
  EXPECT_GE(r.min_ratio, lo * (1 - 1e-12));
  EXPECT_LE(r.max_ratio, hi * (1 + 1e-12));
  EXPECT_NEAR(r.min_ratio, std::sqrt(5.0), 1e-12);
}

TEST(Probe, DeterministicForSeed) {
  const Matrix A = rademacher(50, 20, 3);
  const auto a = probe_l1(A, 2, 3000, 11), b = probe_l1(A, 2, 3000, 11);
  EXPECT_EQ(a.min_ratio, b.min_ratio);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
}

TEST(RandomSparse, ExactlySSparse) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const Vector x = random_sparse(20, 5, Field::kComplex, rng);
    const auto nz = std::count_if(x.entries().begin(), x.entries().end(), [](cplx z) { return z != 0.0; });
    ASSERT_EQ(nz, 5);
  }
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(32, 4), 35960u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

}  // namespace
}  // namespace ripforge
