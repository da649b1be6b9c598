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

#include "ripforge/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "ripforge/constructors.hpp"
#include "ripforge/parallel.hpp"
#include "ripforge/random.hpp"

namespace ripforge {
namespace {

std::vector<std::vector<cplx>> normalized_columns(const Matrix& A) {
  std::vector<std::vector<cplx>> cols(A.cols());
  for (std::size_t k = 0; k < A.cols(); ++k) {
    cols[k] = A.column(k);
    const double n = norm(cols[k], 2.0);
    if (n == 0.0) throw Error(ErrorCode::kZeroColumn, "column " + std::to_string(k) + " is identically zero");
    for (cplx& v : cols[k]) v /= n;
  }
  return cols;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc;
}

template <std::size_t K>
bool lex_less(const std::array<std::size_t, K>& a, const std::array<std::size_t, K>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Keeps the larger |sum|, ties resolved towards the lexicographically first witness.
template <std::size_t K>
struct MaxWitness {
  std::int64_t value = -1;
  std::array<std::size_t, K> witness{};

  void offer(std::int64_t v, const std::array<std::size_t, K>& w) {
    if (v > value || (v == value && lex_less(w, witness))) {
      value = v;
      witness = w;
    }
  }
  void merge(const MaxWitness& o) {
    if (o.value >= 0) offer(o.value, o.witness);
  }
};

}  // namespace

double coherence(const Matrix& A) {
  if (A.cols() < 2) throw Error(ErrorCode::kInvalidParams, "coherence needs at least two columns");
  const auto cols = normalized_columns(A);
  std::vector<double> per_column(cols.size(), 0.0);
  parallel_for(cols.size(), [&](std::size_t j) {
    double best = 0.0;
    for (std::size_t l = j + 1; l < cols.size(); ++l) best = std::max(best, std::abs(inner(cols[j], cols[l])));
    per_column[j] = best;
  });
  return *std::max_element(per_column.begin(), per_column.end());
}

double default_kappa(std::uint64_t N) {
  if (N < 2) throw Error(ErrorCode::kInvalidParams, "default kappa needs N >= 2");
  return std::sqrt(8.0 * std::log(static_cast<double>(N)));
}

SignMatrix::SignMatrix(const Matrix& A)
    : rows_(A.rows()), cols_(A.cols()), words_((A.rows() + 63) / 64), bits_(words_ * A.cols(), 0) {
  for (std::size_t j = 0; j < rows_; ++j) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx v = A(j, k);
      if (v.imag() != 0.0 || (v.real() != 1.0 && v.real() != -1.0)) {
        throw Error(ErrorCode::kNotSignMatrix,
                    "entry (" + std::to_string(j) + ", " + std::to_string(k) + ") is not +1 or -1");
      }
      if (v.real() < 0.0) bits_[k * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
}

std::int64_t SignMatrix::pair_sum(std::size_t k, std::size_t kp) const noexcept {
  const std::uint64_t* a = &bits_[k * words_];
  const std::uint64_t* b = &bits_[kp * words_];
  std::int64_t negatives = 0;
  for (std::size_t w = 0; w < words_; ++w) negatives += std::popcount(a[w] ^ b[w]);
  return static_cast<std::int64_t>(rows_) - 2 * negatives;
}

std::int64_t SignMatrix::quad_sum(std::size_t k, std::size_t kp, std::size_t l, std::size_t lp) const noexcept {
  const std::uint64_t* a = &bits_[k * words_];
  const std::uint64_t* b = &bits_[kp * words_];
  const std::uint64_t* c = &bits_[l * words_];
  const std::uint64_t* d = &bits_[lp * words_];
  std::int64_t negatives = 0;
  for (std::size_t w = 0; w < words_; ++w) negatives += std::popcount(a[w] ^ b[w] ^ c[w] ^ d[w]);
  return static_cast<std::int64_t>(rows_) - 2 * negatives;
}

ConditionA condition_a(const SignMatrix& A, double kappa) {
  const double threshold = kappa * std::sqrt(static_cast<double>(A.rows()));
  const std::size_t n = A.cols();
  std::vector<MaxWitness<2>> per_k(n);
  parallel_for(n, [&](std::size_t k) {
    for (std::size_t kp = k + 1; kp < n; ++kp) per_k[k].offer(std::abs(A.pair_sum(k, kp)), {k, kp});
  });
  MaxWitness<2> best;
  for (const auto& w : per_k) best.merge(w);
  if (best.value < 0) return {true, 0, {0, 0}, threshold};
  return {static_cast<double>(best.value) <= threshold, best.value, best.witness, threshold};
}

ConditionA condition_a(const Matrix& A, double kappa) { return condition_a(SignMatrix(A), kappa); }

ConditionB condition_b(const SignMatrix& A, double kappa) {
  const double threshold = kappa * std::sqrt(static_cast<double>(A.rows()));
  const std::size_t n = A.cols();
  if (n < 4) return {true, 0, {0, 0, 0, 0}, threshold};
  std::vector<MaxWitness<4>> per_a(n);
  parallel_for(n, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) per_a[a].offer(std::abs(A.quad_sum(a, b, c, d)), {a, b, c, d});
      }
    }
  });
  MaxWitness<4> best;
  for (const auto& w : per_a) best.merge(w);
  return {static_cast<double>(best.value) <= threshold, best.value, best.witness, threshold};
}

ConditionB condition_b(const Matrix& A, double kappa) { return condition_b(SignMatrix(A), kappa); }

Theorem1Bound theorem1_bound(double kappa, double delta, std::size_t s) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidDelta, "delta must lie in (0, 1)");
  if (!(kappa > 0.0) || s < 1) throw Error(ErrorCode::kInvalidParams, "bound needs kappa > 0, s >= 1");
  const double s2 = static_cast<double>(s) * static_cast<double>(s);
  const double m = std::ceil(kappa * kappa * s2 * s2 / (delta * delta));
  const double alpha = std::sqrt(std::pow(1.0 - delta, 3) / (3.0 * (1.0 + delta)));
  const double beta = std::sqrt(1.0 + delta);
  return {static_cast<std::uint64_t>(m), beta / alpha, alpha, beta};
}

CertReport certify_sign_matrix(const Matrix& A, double kappa, double delta, std::size_t s) {
  const SignMatrix signs(A);
  const Theorem1Bound bound = theorem1_bound(kappa, delta, s);
  const ConditionA a = condition_a(signs, kappa);
  const ConditionB b = condition_b(signs, kappa);
  return CertReport{coherence(A), kappa, a.max_pair_sum, b.max_quad_sum, a.witness, b.witness, a.pass, b.pass,
                    delta, s, A.rows(), bound.m_required, bound.gamma, bound.alpha, bound.beta};
}

nlohmann::ordered_json to_json(const CertReport& r) {
  nlohmann::ordered_json j;
  j["coherence"] = r.coherence;
  j["kappa"] = r.kappa;
  j["threshold"] = r.kappa * std::sqrt(static_cast<double>(r.m));
  j["max_pair_sum"] = r.max_pair_sum;
  j["pair_witness"] = r.pair_witness;
  j["max_quad_sum"] = r.max_quad_sum;
  j["quad_witness"] = r.quad_witness;
  j["cond_a_pass"] = r.cond_a_pass;
  j["cond_b_pass"] = r.cond_b_pass;
  j["delta"] = r.delta;
  j["s"] = r.s;
  j["m"] = r.m;
  j["m_required"] = r.m_required;
  j["distortion_bound"] = r.distortion_bound;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["certified"] = r.certified();
  return j;
}

RoundsExhaustedError::RoundsExhaustedError(std::uint64_t rounds_, ConditionA a, ConditionB b, std::uint64_t round)
    : Error(ErrorCode::kRoundsExhausted,
            "no certified draw in " + std::to_string(rounds_) + " rounds (best round " + std::to_string(round) +
                ": max pair sum " + std::to_string(a.max_pair_sum) + ", max quad sum " +
                std::to_string(b.max_quad_sum) + ", threshold " + std::to_string(a.threshold) + ")"),
      rounds(rounds_),
      best_a(a),
      best_b(b),
      best_round(round) {}

LasVegasResult las_vegas(std::size_t m, std::size_t N, std::optional<double> kappa_opt, std::uint64_t max_rounds,
                         std::uint64_t seed) {
  if (max_rounds < 1) throw Error(ErrorCode::kInvalidParams, "max_rounds must be >= 1");
  if (m < 1 || N < 1) throw Error(ErrorCode::kInvalidParams, "las_vegas needs m, N >= 1");
  const double kappa = kappa_opt.value_or(default_kappa(N));
  if (!(kappa > 0.0)) throw Error(ErrorCode::kInvalidParams, "kappa must be positive");

  struct Attempt {
    ConditionA a;
    ConditionB b;
  };
  const std::uint64_t batch = std::max<std::uint64_t>(1, worker_count());
  std::optional<Attempt> best;
  std::uint64_t best_round = 0;
  double best_excess = std::numeric_limits<double>::infinity();

  for (std::uint64_t first = 1; first <= max_rounds; first += batch) {
    const std::uint64_t count = std::min(batch, max_rounds - first + 1);
    std::vector<Attempt> attempts(count, Attempt{{}, {}});
    parallel_blocks(count, [&](std::size_t i) {
      const SignMatrix signs(rademacher(m, N, derive_seed(seed, first + i)));
      attempts[i].a = condition_a(signs, kappa);
      attempts[i].b = condition_b(signs, kappa);
    });
    for (std::uint64_t i = 0; i < count; ++i) {
      const Attempt& at = attempts[i];
      const std::uint64_t round = first + i;
      if (at.a.pass && at.b.pass) {
        Matrix A = rademacher(m, N, derive_seed(seed, round));
        Meta meta = make_meta("lasvegas", {{"m", m}, {"N", N}, {"kappa", kappa}, {"max_rounds", max_rounds}});
        meta["seed"] = seed;
        meta["round"] = round;
        meta["round_seed"] = derive_seed(seed, round);
        meta["subseed_mixer"] = kSubseedMixer;
        return {std::move(A).with_meta(std::move(meta)), round, kappa};
      }
      const double excess = std::max(static_cast<double>(at.a.max_pair_sum) / at.a.threshold,
                                     static_cast<double>(at.b.max_quad_sum) / at.b.threshold);
      if (excess < best_excess) {
        best_excess = excess;
        best = at;
        best_round = round;
      }
    }
  }
  throw RoundsExhaustedError(max_rounds, best->a, best->b, best_round);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ typedef unsigned __int128 u128;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

double exact_ric(const Matrix& A, std::size_t s) {
  if (s < 1 || s > A.cols()) throw Error(ErrorCode::kInvalidParams, "exact_ric needs 1 <= s <= N");
  const std::uint64_t subsets = binomial(A.cols(), s);
  if (subsets > kMaxRicSubsets) {
    throw Error(ErrorCode::kTooLarge, "C(" + std::to_string(A.cols()) + ", " + std::to_string(s) + ") = " +
                                          std::to_string(subsets) + " subsets exceeds 10^6");
  }
  const auto cols = normalized_columns(A);
  const std::size_t n = cols.size();
  Eigen::MatrixXcd gram_all(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const cplx g = inner(cols[a], cols[b]);
      gram_all(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g;
      gram_all(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = std::conj(g);
    }
  }

  // Subsets are grouped by their smallest index so the groups can run in parallel.
  std::vector<double> per_first(n - s + 1, 0.0);
  parallel_for(per_first.size(), [&](std::size_t first) {
    std::vector<std::size_t> idx(s);
    idx[0] = first;
    std::iota(idx.begin() + 1, idx.end(), first + 1);
    const auto ss = static_cast<Eigen::Index>(s);
    Eigen::MatrixXcd g(ss, ss);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    double worst = 0.0;
    while (true) {
      for (Eigen::Index a = 0; a < ss; ++a) {
        for (Eigen::Index b = 0; b < ss; ++b) {
          g(a, b) = gram_all(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
        }
      }
      solver.compute(g, Eigen::EigenvaluesOnly);
      const auto& ev = solver.eigenvalues();
      worst = std::max({worst, std::abs(ev.minCoeff() - 1.0), std::abs(ev.maxCoeff() - 1.0)});
      // Advance positions 1..s-1 in lexicographic order, keeping idx[0] fixed.
      std::size_t pos = s;
      while (pos > 1 && idx[pos - 1] == n - s + pos - 1) --pos;
      if (pos <= 1) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < s; ++q) idx[q] = idx[q - 1] + 1;
    }
    per_first[first] = worst;
  });
  return *std::max_element(per_first.begin(), per_first.end());
}

Vector random_sparse(std::size_t n, std::size_t s, Field field, Rng& rng) {
  if (s > n) throw Error(ErrorCode::kInvalidParams, "sparsity exceeds the vector length");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(perm[i], perm[j]);
    x[perm[i]] = field == Field::kComplex ? rng.complex_gaussian() : cplx(rng.gaussian(), 0.0);
  }
  return Vector(field, std::move(x));
}

Vector random_sparse(std::size_t n, std::size_t s, Field field, std::uint64_t seed) {
  Rng rng(seed);
  return random_sparse(n, s, field, rng);
}

ProbeReport probe_l1(const Matrix& A, std::size_t s, std::uint64_t trials, std::uint64_t seed) {
  if (s < 1 || s > A.cols()) throw Error(ErrorCode::kInvalidParams, "probe needs 1 <= s <= N");
  if (trials < 1) throw Error(ErrorCode::kInvalidParams, "probe needs at least one trial");
  const std::size_t blocks = default_block_count(trials, 64);
  std::vector<double> lo(blocks, std::numeric_limits<double>::infinity());
  std::vector<double> hi(blocks, 0.0);
  parallel_blocks(blocks, [&](std::size_t b) {
    const auto range = block_range(trials, blocks, b);
    Rng rng(derive_seed(seed, b));
    std::vector<cplx> y(A.rows());
    for (std::size_t t = range.begin; t < range.end; ++t) {
      Vector x = random_sparse(A.cols(), s, A.field(), rng);
      const double nx = norm(x, 2.0);
      if (nx == 0.0) continue;
      matvec_into(A, x.entries(), y);
      const double ratio = norm(y, 1.0) / nx;
      lo[b] = std::min(lo[b], ratio);
      hi[b] = std::max(hi[b], ratio);
    }
  });
  const double min_ratio = *std::min_element(lo.begin(), lo.end());
  const double max_ratio = *std::max_element(hi.begin(), hi.end());
  return {trials, s, min_ratio, max_ratio, max_ratio / min_ratio};
}

nlohmann::ordered_json to_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["trials"] = r.trials;
  j["s"] = r.s;
  j["min_ratio"] = r.min_ratio;
  j["max_ratio"] = r.max_ratio;
  j["empirical_distortion"] = r.empirical_distortion;
  j["distortion_is_lower_bound"] = true;
  return j;
}

}  // namespace ripforge
