// Copyright 2026 The mmx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mmx/dynamics.h"
#include "mmx/equilibrium.h"
#include "mmx/games.h"
#include "mmx/rng.h"
#include "mmx/spectral.h"

namespace mmx {
namespace {

DynamicsState RandomState(int n, std::uint64_t seed) {
  Rng rng(seed);
  return DynamicsState::FromPair(ClampAwayFromBoundary(rng.DirichletOnes(n)),
                                 ClampAwayFromBoundary(rng.DirichletOnes(n)));
}

void BM_OmwuStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = MakeRandomBilinear(n, n, 1);
  DynamicsState s = RandomState(n, 2);
  for (auto _ : state) {
    s = OmwuStep(s, *game, 0.1);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_OmwuStep)->Arg(5)->Arg(50)->Arg(250);

void BM_OgdaStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = MakeRandomBilinear(n, n, 1);
  DynamicsState s = RandomState(n, 2);
  for (auto _ : state) {
    s = OgdaStep(s, *game, 0.1);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_OgdaStep)->Arg(5)->Arg(50)->Arg(250);

void BM_DualityGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = MakeRandomBilinear(n, n, 1);
  const DynamicsState s = RandomState(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DualityGap(*game, s.x_cur.probs(), s.y_cur.probs()));
  }
}
BENCHMARK(BM_DualityGap)->Arg(5)->Arg(50)->Arg(250);

void BM_SolveBilinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = RandomGaussianMatrix(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(SolveBilinear(a));
}
BENCHMARK(BM_SolveBilinear)->Arg(5)->Arg(20)->Arg(50);

void BM_AnalyzeStability(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix a = RandomGaussianMatrix(n, n, 4);
  const auto game = MakeBilinear(a);
  const BilinearSolution sol = SolveBilinear(a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AnalyzeStability(*game, sol.x, sol.y, 0.05));
  }
}
BENCHMARK(BM_AnalyzeStability)->Arg(5)->Arg(20)->Arg(50);

}  // namespace
}  // namespace mmx

BENCHMARK_MAIN();
