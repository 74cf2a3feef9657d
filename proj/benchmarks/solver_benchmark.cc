// Copyright 2026 The gleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <vector>

#include <benchmark/benchmark.h>

#include "gleak/attack.h"
#include "gleak/fedsim.h"
#include "gleak/reconstruct.h"

namespace gleak {
namespace {

// Exhaustive uniqueness check (limit 2) on one random batch per size.
void BM_Solve(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  Rng rng(m * 1000 + d);
  const IlpModel model = build_model(gram(random_batch(m, d, rng)), m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(model, {.limit = 2}));
  }
  state.counters["constraints"] = static_cast<double>(count_constraints(m, d));
}
BENCHMARK(BM_Solve)
    ->ArgsProduct({{3, 5, 8, 9, 11}, {5, 10, 15, 20}})
    ->Unit(benchmark::kMicrosecond);

void BM_BuildModel(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  Rng rng(7);
  const Matrix alpha = gram(random_batch(m, d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(build_model(alpha, m));
}
BENCHMARK(BM_BuildModel)->Args({11, 20})->Unit(benchmark::kMicrosecond);

void BM_RecoverAlphaBeta(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(d);
  // A smaller step keeps SGD stable at d = 64, so theta stays informative.
  TrainingConfig config;
  config.lambda = 0.01;
  config.rounds = d + 1;
  config.attacker_batch_size = 4;
  const Transcript t = run_training({random_batch(8, d, rng)},
                                    random_batch(2 * d, d, rng), config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_alpha_beta(t.observations, config.lambda));
  }
}
BENCHMARK(BM_RecoverAlphaBeta)->RangeMultiplier(2)->Range(4, 64);

void BM_ClosedFormDelta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t d = 10;
  Rng rng(n);
  std::vector<Matrix> alphas;
  std::vector<Vector> betas;
  for (std::size_t i = 0; i < n; ++i) {
    const Batch b = random_batch(8, d, rng);
    alphas.push_back(gram(b));
    betas.push_back(label_correlation(b));
  }
  const Vector theta(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_delta(alphas, betas, theta, 0.1));
  }
}
BENCHMARK(BM_ClosedFormDelta)->DenseRange(1, 5);

}  // namespace
}  // namespace gleak

BENCHMARK_MAIN();
