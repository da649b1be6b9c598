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

#include <benchmark/benchmark.h>

#include "ripforge/ripforge.hpp"

namespace {

using namespace ripforge;

void BM_BuildAndVerifyRuler(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto r = build_ruler(p);
    benchmark::DoNotOptimize(verify_ruler(r.marks));
  }
}
BENCHMARK(BM_BuildAndVerifyRuler)->Arg(101)->Arg(1009)->Arg(4999);

void BM_GolombPhase(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(golomb_phase(p));
}
BENCHMARK(BM_GolombPhase)->Arg(11)->Arg(31)->Arg(61);

void BM_ConditionB(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const SignMatrix S(rademacher(1775, N, 1));
  const double kappa = default_kappa(N);
  for (auto _ : state) benchmark::DoNotOptimize(condition_b(S, kappa));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(N, 4)));
}
BENCHMARK(BM_ConditionB)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Coherence(benchmark::State& state) {
  const Matrix A = alltop(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coherence(A));
}
BENCHMARK(BM_Coherence)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);

void BM_ExactRic(benchmark::State& state) {
  const Matrix A = weil(5, 2);
  const auto s = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_ric(A, s));
}
BENCHMARK(BM_ExactRic)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DesignDefect(benchmark::State& state) {
  const auto d = matrix_to_design(golomb_stacked(static_cast<std::uint64_t>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(design_defect(d.points, 2));
}
BENCHMARK(BM_DesignDefect)->Arg(5)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_DeltaMonteCarlo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta_monte_carlo(4, 3, Field::kComplex, 100000, 1));
}
BENCHMARK(BM_DeltaMonteCarlo)->Unit(benchmark::kMillisecond);

void BM_L4Identity(benchmark::State& state) {
  const Matrix A = golomb_phase(static_cast<std::uint64_t>(state.range(0)));
  Rng rng(3);
  std::vector<cplx> x(A.cols());
  for (auto& z : x) z = rng.complex_gaussian();
  const Vector v(Field::kComplex, x);
  for (auto _ : state) benchmark::DoNotOptimize(l4_identity(A, v));
}
BENCHMARK(BM_L4Identity)->Arg(7)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_Iht(benchmark::State& state) {
  const Matrix A = rademacher(1775, 32, 5);
  const Vector y = matvec(A, random_sparse(32, 2, Field::kReal, 1));
  for (auto _ : state) benchmark::DoNotOptimize(iht(A, y, 2, 200, 1e-9));
}
BENCHMARK(BM_Iht)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
