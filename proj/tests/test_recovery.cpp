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

#include "oracles.hpp"
#include "ripforge/certify.hpp"
#include "ripforge/constructors.hpp"
#include "ripforge/error.hpp"
#include "ripforge/recovery.hpp"

namespace ripforge {
namespace {

std::size_t nonzeros(const Vector& x) {
  return static_cast<std::size_t>(
      std::count_if(x.entries().begin(), x.entries().end(), [](cplx z) { return z != 0.0; }));
}

double rel_error(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d) / norm(b, 2.0);
}

TEST(HardThreshold, KeepsLargestWithIndexTies) {
  std::vector<cplx> x{1.0, -3.0, cplx(0, 2), 2.0, 0.5};
  hard_threshold(x, 2);
  EXPECT_EQ(x, (std::vector<cplx>{0.0, -3.0, cplx(0, 2), 0.0, 0.0}));
  std::vector<cplx> ties{1.0, 1.0, 1.0, 1.0};
  hard_threshold(ties, 2);
  EXPECT_EQ(ties, (std::vector<cplx>{1.0, 1.0, 0.0, 0.0}));
  std::vector<cplx> none{1.0, 2.0};
  hard_threshold(none, 0);
  EXPECT_EQ(none, (std::vector<cplx>{0.0, 0.0}));
}

TEST(HardThreshold, MatchesSortOracle) {
  oracle::TestRng rng(1);
  for (int t = 0; t < 500; ++t) {
    auto x = rng.cvec(1 + rng.index(30));
    const std::size_t s = rng.index(x.size() + 1);
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::abs(x[a]) > std::abs(x[b]); });
    std::vector<cplx> expect(x.size());
    for (std::size_t i = 0; i < s; ++i) expect[order[i]] = x[order[i]];
    hard_threshold(x, s);
    ASSERT_EQ(x, expect);
  }
}

TEST(SpectralNorm, MatchesKnownValues) {
  EXPECT_NEAR(spectral_norm_squared(golomb_phase(5)), 121.0, 1e-8);
  const Matrix D(Field::kReal, 3, 3, {3.0, 0.0, 0.0, 0.0, -5.0, 0.0, 0.0, 0.0, 1.0});
  EXPECT_NEAR(spectral_norm_squared(D), 25.0, 1e-8);
}

TEST(Iht, TrivialCases) {
  const Matrix A = rademacher(30, 10, 1);
  const auto zero = iht(A, Vector::zeros(Field::kReal, 30), 2, 100, 1e-9);
  EXPECT_TRUE(zero.converged);
  EXPECT_EQ(zero.iterations, 1u);
  EXPECT_EQ(nonzeros(zero.estimate), 0u);

  const Vector y = matvec(A, random_sparse(10, 2, Field::kReal, 3));
  const auto s0 = iht(A, y, 0, 50, 1e-9);
  EXPECT_EQ(nonzeros(s0.estimate), 0u);
  EXPECT_FALSE(s0.converged);
}

TEST(Iht, Errors) {
  const Matrix A = rademacher(30, 10, 1);
  EXPECT_THROW(iht(A, Vector::zeros(Field::kReal, 29), 2, 10, 1e-9), Error);
  const Matrix Z(Field::kReal, 2, 2, {1.0, 0.0, 1.0, 0.0});
  try {
    iht(Z, Vector::real({1.0, 1.0}), 1, 10, 1e-9);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroColumn);
  }
}

TEST(Iht, OutputAlwaysSSparse) {
  oracle::TestRng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 5 + rng.index(20), n = 5 + rng.index(20), s = 1 + rng.index(4);
    const Matrix A(Field::kComplex, m, n, rng.cvec(m * n));
    const auto r = iht(A, Vector(Field::kComplex, rng.cvec(m)), s, 30, 1e-12);
    ASSERT_LE(nonzeros(r.estimate), s);
    ASSERT_EQ(r.residual_history.size(), r.iterations);
  }
}

TEST(Iht, RecoversOnCertifiedMatrixAndBeatsBrokenControl) {
  const auto lv = las_vegas(1775, 32, std::nullopt, 50, 7);
  const Matrix& A = lv.matrix;
  std::vector<cplx> broken(A.entries().begin(), A.entries().end());
  for (std::size_t j = 0; j < A.rows(); ++j) broken[j * 32 + 1] = broken[j * 32 + 0];
  const Matrix B(Field::kReal, A.rows(), 32, broken);

  int good = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Vector x0 = random_sparse(32, 2, Field::kReal, seed);
    const auto r = iht(A, matvec(A, x0), 2, 200, 1e-9);
    EXPECT_EQ(nonzeros(r.estimate), 2u);
    if (rel_error(r.estimate, x0) <= 1e-6) ++good;
    const auto rb = iht(B, matvec(B, x0), 2, 200, 1e-9);
    if (rel_error(rb.estimate, x0) <= 1e-6) ++bad;
  }
  EXPECT_GE(good, 38);
  EXPECT_GT(good, bad);
}

}  // namespace
}  // namespace ripforge
