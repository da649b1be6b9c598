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

#include "ripforge/designs.hpp"

#include <cmath>
#include <string>

#include "ripforge/error.hpp"
#include "ripforge/parallel.hpp"
#include "ripforge/random.hpp"

namespace ripforge {
namespace {

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return acc;
}

double int_pow(double base, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

void require_dim_k(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw Error(ErrorCode::kInvalidParams, "need n >= 1 and k >= 1");
}

}  // namespace

WeightedPointSet::WeightedPointSet(Field field, std::size_t dim, std::vector<cplx> points,
                                   std::vector<double> weights)
    : field_(field), dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
  if (dim_ == 0 || weights_.empty() || points_.size() != dim_ * weights_.size()) {
    throw Error(ErrorCode::kInvalidPointSet, "point and weight counts do not match the dimension");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) throw Error(ErrorCode::kInvalidPointSet, "negative weight at " + std::to_string(i));
    total += weights_[i];
    const auto x = point(i);
    if (std::abs(norm(x, 2.0) - 1.0) > kPointSetTolerance) {
      throw Error(ErrorCode::kInvalidPointSet, "point " + std::to_string(i) + " is not a unit vector");
    }
    if (field_ == Field::kReal) {
      for (const cplx& v : x) {
        if (v.imag() != 0.0) throw Error(ErrorCode::kInvalidPointSet, "complex coordinate in a real point set");
      }
    }
  }
  if (std::abs(total - 1.0) > kPointSetTolerance) {
    throw Error(ErrorCode::kInvalidPointSet, "weights sum to " + std::to_string(total) + ", not 1");
  }
}

double delta_closed_form(std::size_t n, std::size_t k, Field field) {
  require_dim_k(n, k);
  double value = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto fi = static_cast<double>(i);
    const auto fn = static_cast<double>(n);
    value *= field == Field::kReal ? (2.0 * fi + 1.0) / (fn + 2.0 * fi) : (fi + 1.0) / (fn + fi);
  }
  return value;
}

MonteCarloEstimate delta_monte_carlo(std::size_t n, std::size_t k, Field field, std::uint64_t samples,
                                     std::uint64_t seed) {
  require_dim_k(n, k);
  if (samples < 1000) throw Error(ErrorCode::kInvalidParams, "Monte Carlo needs at least 1000 samples");
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    Moments operator+(const Moments& o) const { return {sum + o.sum, sum_sq + o.sum_sq}; }
  };
  const std::size_t blocks = default_block_count(samples, 4096);
  std::vector<Moments> partial(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    const auto range = block_range(samples, blocks, b);
    Rng rng(derive_seed(seed, b));
    std::vector<cplx> y(n);
    Moments acc;
    for (std::size_t t = range.begin; t < range.end; ++t) {
      double sq = 0.0;
      for (cplx& v : y) {
        v = field == Field::kComplex ? rng.complex_gaussian() : cplx(rng.gaussian(), 0.0);
        sq += std::norm(v);
      }
      // |<e_1, y/|y|>|^2 = |y_1|^2 / |y|^2
      const double value = int_pow(std::norm(y[0]) / sq, k);
      acc.sum += value;
      acc.sum_sq += value * value;
    }
    partial[b] = acc;
  });
  const Moments total = pairwise_sum(std::move(partial));
  const auto count = static_cast<double>(samples);
  const double mean = total.sum / count;
  const double var = std::max(0.0, (total.sum_sq / count - mean * mean) * count / (count - 1.0));
  return {mean, std::sqrt(var / count)};
}

double frame_potential(const WeightedPointSet& ps, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "need k >= 1");
  const std::size_t N = ps.size();
  const auto& tau = ps.weights();
  return parallel_sum<double>(N, [&](std::size_t begin, std::size_t end) {
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < N; ++j) row += tau[j] * int_pow(std::norm(inner(ps.point(i), ps.point(j))), k);
      acc += tau[i] * row;
    }
    return acc;
  });
}

double design_defect(const WeightedPointSet& ps, std::size_t k) {
  return frame_potential(ps, k) - delta_closed_form(ps.dim(), k, ps.field());
}

double tensor_defect_explicit(const WeightedPointSet& ps, std::size_t k) {
  if (k != 1) throw Error(ErrorCode::kUnsupportedK, "explicit tensor only available for k = 1");
  const std::size_t n = ps.dim();
  if (n > 64) throw Error(ErrorCode::kInvalidParams, "explicit tensor supports n <= 64");
  std::vector<cplx> moment(n * n);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto x = ps.point(i);
    const double t = ps.weights()[i];
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) moment[a * n + b] += t * x[a] * std::conj(x[b]);
    }
  }
  const double d = 1.0 / static_cast<double>(n);
  double sq = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) sq += std::norm(moment[a * n + b] - (a == b ? d : 0.0));
  }
  return sq;
}

DesignFromMatrix matrix_to_design(const Matrix& A, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "need k >= 1");
  const std::size_t N = A.rows();
  const std::size_t n = A.cols();
  std::vector<cplx> points(N * n);
  std::vector<double> power(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto row = A.row(i);
    const double len = norm(row, 2.0);
    if (len == 0.0) throw Error(ErrorCode::kZeroRow, "row " + std::to_string(i) + " is identically zero");
    for (std::size_t c = 0; c < n; ++c) points[i * n + c] = std::conj(row[c]) / len;
    power[i] = int_pow(len, 2 * k);
  }
  const double S = pairwise_sum(power);
  std::vector<double> weights(N);
  for (std::size_t i = 0; i < N; ++i) weights[i] = power[i] / S;
  return {WeightedPointSet(A.field(), n, std::move(points), std::move(weights)), S};
}

Matrix point_set_to_matrix(const WeightedPointSet& ps) {
  std::vector<cplx> e;
  e.reserve(ps.size() * ps.dim());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto x = ps.point(i);
    e.insert(e.end(), x.begin(), x.end());
  }
  Meta meta = make_meta("point_set", {{"n", ps.dim()}, {"N", ps.size()}});
  meta["weights"] = ps.weights();
  return Matrix(ps.field(), ps.size(), ps.dim(), std::move(e), std::move(meta));
}

WeightedPointSet point_set_from_matrix(const Matrix& A) {
  std::vector<double> weights;
  if (A.meta().contains("weights")) {
    try {
      weights = A.meta()["weights"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kInvalidPointSet, "meta weights must be an array of numbers");
    }
  } else {
    weights.assign(A.rows(), 1.0 / static_cast<double>(A.rows()));
  }
  if (weights.size() != A.rows()) throw Error(ErrorCode::kInvalidPointSet, "one weight per row required");
  return WeightedPointSet(A.field(), A.cols(), std::vector<cplx>(A.entries().begin(), A.entries().end()),
                          std::move(weights));
}

ChainDirection parse_chain_direction(std::string_view text) {
  if (text == "2to3") return ChainDirection::k2To3;
  if (text == "3to1") return ChainDirection::k3To1;
  if (text == "1to2") return ChainDirection::k1To2;
  throw Error(ErrorCode::kInvalidParams, "direction must be 2to3, 3to1 or 1to2");
}

double epsilon_chain(ChainDirection direction, double input_eps, std::size_t n, std::size_t k, Field field) {
  if (!(input_eps >= 0.0)) throw Error(ErrorCode::kInvalidParams, "epsilon must be nonnegative");
  switch (direction) {
    case ChainDirection::k2To3:
      return std::sqrt(input_eps);
    case ChainDirection::k3To1:
      return input_eps / delta_closed_form(n, k, field);
    case ChainDirection::k1To2:
      if (input_eps > 0.5) throw Error(ErrorCode::kEpsilonOutOfRange, "eps1 must be <= 1/2");
      return 4.0 * input_eps * delta_closed_form(n, k, field);
  }
  return 0.0;
}

}  // namespace ripforge
