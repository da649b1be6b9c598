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

#include "ripforge/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ripforge/error.hpp"
#include "ripforge/random.hpp"

namespace ripforge {

void hard_threshold(std::span<cplx> x, std::size_t s) {
  if (s >= x.size()) return;
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> mag(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::abs(x[i]);
  auto before = [&](std::size_t a, std::size_t b) { return mag[a] > mag[b] || (mag[a] == mag[b] && a < b); };
  if (s > 0) std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s - 1), order.end(), before);
  // order[s..] now holds the entries ranked below the s-th.
  for (std::size_t i = s; i < order.size(); ++i) x[order[i]] = 0.0;
}

double spectral_norm_squared(const Matrix& A, std::size_t iterations, double tol) {
  Rng rng(0x5eedULL);
  std::vector<cplx> v(A.cols());
  for (cplx& z : v) z = rng.gaussian();
  std::vector<cplx> Av(A.rows());
  double estimate = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const double nv = norm(v, 2.0);
    if (nv == 0.0) return 0.0;
    for (cplx& z : v) z /= nv;
    matvec_into(A, v, Av);
    const Vector w = adjoint_matvec(A, Vector(Field::kComplex, Av));
    const double next = std::real(std::inner_product(v.begin(), v.end(), w.entries().begin(), cplx{},
                                                     std::plus<>(), [](cplx a, cplx b) { return std::conj(a) * b; }));
    v.assign(w.entries().begin(), w.entries().end());
    if (it > 0 && std::abs(next - estimate) <= tol * std::abs(next)) return next;
    estimate = next;
  }
  return estimate;
}

RecoveryResult iht(const Matrix& A, const Vector& y, std::size_t s, std::size_t max_iter, double tol) {
  if (y.size() != A.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "measurement length " + std::to_string(y.size()) + " != " +
                                                   std::to_string(A.rows()) + " rows");
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidParams, "tolerance must be nonnegative");
  for (std::size_t k = 0; k < A.cols(); ++k) {
    if (norm(A.column(k), 2.0) == 0.0) {
      throw Error(ErrorCode::kZeroColumn, "column " + std::to_string(k) + " is identically zero");
    }
  }
  const Field field = promote(A.field(), y.field());
  const double step = 1.0 / spectral_norm_squared(A);
  const double target = tol * norm(y, 2.0);

  Vector x = Vector::zeros(field, A.cols());
  std::vector<cplx> residual(A.rows());
  std::vector<cplx> Ax(A.rows());
  RecoveryResult result{x, 0, {}, false};
  for (std::size_t it = 0; it < max_iter; ++it) {
    matvec_into(A, x.entries(), Ax);
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] = y[j] - Ax[j];
    const Vector grad = adjoint_matvec(A, Vector(field, residual));
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += step * grad[k];
    hard_threshold(x.entries(), s);

    matvec_into(A, x.entries(), Ax);
    for (std::size_t j = 0; j < residual.size(); ++j) residual[j] = y[j] - Ax[j];
    const double res = norm(residual, 2.0);
    result.residual_history.push_back(res);
    result.iterations = it + 1;
    if (res <= target) {
      result.converged = true;
      break;
    }
  }
  result.estimate = std::move(x);
  return result;
}

}  // namespace ripforge
