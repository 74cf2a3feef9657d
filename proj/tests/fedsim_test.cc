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
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gleak/errors.h"
#include "gleak/fedsim.h"
#include "gleak/json_io.h"
#include "gradient_oracle.h"
#include "test_util.h"

namespace gleak {
namespace {

using ::gleak::testing::CentralDifferenceGradient;
using ::gleak::testing::LoopGradient;
using ::gleak::testing::RandomVector;

constexpr double kLog2 = std::numbers::ln2;

TEST(BatchTest, ValidatesDomains) {
  EXPECT_THROW(Batch(Matrix{{0.5}}, Vector{1}), Error);
  EXPECT_THROW(Batch(Matrix{{1}}, Vector{0}), Error);
  EXPECT_THROW(Batch(Matrix{{1}, {0}}, Vector{1}), Error);
  EXPECT_NO_THROW(Batch(Matrix{{1, 0}}, Vector{-1}));
}

TEST(ApproxLossTest, ZeroModelGivesLog2) {
  EXPECT_DOUBLE_EQ(approx_loss(Vector{0, 0}, Vector{1, 1}, 1.0), kLog2);
}

TEST(ApproxLossTest, DirectSubstitution) {
  // theta.x = 2, y = +1: log 2 - 1 + 4/8.
  EXPECT_DOUBLE_EQ(approx_loss(Vector{1, 1}, Vector{1, 1}, 1.0),
                   kLog2 - 1.0 + 0.5);
}

TEST(ApproxLossTest, LinearTermCancelsAcrossLabels) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector theta = RandomVector(6, rng);
    const Vector x = RandomVector(6, rng);
    const double z = dot(theta, x);
    EXPECT_NEAR(approx_loss(theta, x, 1.0) + approx_loss(theta, x, -1.0),
                2.0 * kLog2 + 0.25 * z * z, 1e-14);
  }
}

TEST(ApproxLossTest, RejectsNonSignLabels) {
  EXPECT_THROW(approx_loss(Vector{1}, Vector{1}, 0.0), Error);
  EXPECT_THROW(approx_loss(Vector{1}, Vector{1, 0}, 1.0), Error);
}

TEST(BatchGradientTest, ZeroModel) {
  Rng rng(4);
  const Batch b = random_batch(5, 4, rng);
  EXPECT_EQ(batch_gradient(b, Vector(4)), -0.5 * label_correlation(b));
}

TEST(BatchGradientTest, SingleUnitSample) {
  const Batch b(Matrix{{1, 0, 0}}, Vector{1});
  const Vector g = batch_gradient(b, Vector{1, 0, 0});
  EXPECT_EQ(g, (Vector{-0.25, 0, 0}));
}

TEST(BatchGradientTest, MatrixFormMatchesLoopForm) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 16;
    const std::size_t d = 1 + trial % 20;
    const Batch b = random_batch(m, d, rng);
    const Vector theta = RandomVector(d, rng);
    EXPECT_LE(max_abs_diff(batch_gradient(b, theta), LoopGradient(b, theta)),
              1e-9);
  }
}

TEST(BatchGradientTest, MatchesCentralDifferences) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + trial % 8;
    const std::size_t d = 1 + trial % 10;
    const Batch b = random_batch(m, d, rng);
    const Vector theta = RandomVector(d, rng);
    EXPECT_LE(max_abs_diff(batch_gradient(b, theta),
                           CentralDifferenceGradient(b, theta, 1e-5)),
              1e-6);
  }
}

TEST(BatchGradientTest, DimensionMismatch) {
  Rng rng(1);
  EXPECT_THROW(batch_gradient(random_batch(2, 3, rng), Vector(4)), Error);
}

TEST(SyncRoundTest, IdenticalPartiesMatchSingleSgdStep) {
  Rng rng(10);
  const Batch b = random_batch(4, 5, rng);
  const Vector theta = RandomVector(5, rng);
  const std::vector<Batch> parties{b, b};
  const SyncRoundResult r = sync_round(parties, theta, 0.1);
  EXPECT_LE(max_abs_diff(r.new_theta, theta - 0.1 * batch_gradient(b, theta)),
            1e-15);
}

TEST(SyncRoundTest, ZeroLearningRateKeepsModel) {
  Rng rng(12);
  const std::vector<Batch> parties{random_batch(3, 4, rng),
                                   random_batch(2, 4, rng)};
  const Vector theta = RandomVector(4, rng);
  EXPECT_EQ(sync_round(parties, theta, 0.0).new_theta, theta);
}

TEST(SyncRoundTest, KPartyAggregateIdentity) {
  Rng rng(13);
  const double lambda = 0.1;
  const std::vector<Batch> parties{random_batch(3, 5, rng),
                                   random_batch(4, 5, rng),
                                   random_batch(2, 5, rng)};
  const Vector theta = RandomVector(5, rng);
  const SyncRoundResult r = sync_round(parties, theta, lambda);
  // -k * (new_theta - theta) = lambda [1/4 (sum alpha) theta - 1/2 sum beta].
  Matrix alpha_sum(5, 5);
  Vector beta_sum(5);
  for (const Batch& b : parties) {
    alpha_sum = alpha_sum + gram(b);
    beta_sum = beta_sum + label_correlation(b);
  }
  const Vector lhs = -3.0 * (r.new_theta - theta);
  const Vector rhs =
      lambda * (0.25 * matvec(alpha_sum, theta) - 0.5 * beta_sum);
  EXPECT_LE(max_abs_diff(lhs, rhs), 1e-13);
}

TEST(AsyncLocalPassTest, SingleBatchIsOneGradientStep) {
  Rng rng(14);
  const Batch b = random_batch(5, 6, rng);
  const Vector theta = RandomVector(6, rng);
  const double lambda = 0.2;
  const Vector expected = lambda * (0.25 * matvec(gram(b), theta) -
                                    0.5 * label_correlation(b));
  EXPECT_LE(max_abs_diff(async_local_pass(std::vector<Batch>{b}, theta, lambda),
                         expected),
            1e-15);
}

TEST(AsyncLocalPassTest, ZeroLearningRate) {
  Rng rng(15);
  const std::vector<Batch> batches{random_batch(2, 3, rng),
                                   random_batch(2, 3, rng)};
  EXPECT_EQ(async_local_pass(batches, RandomVector(3, rng), 0.0), Vector(3));
}

TEST(AsyncLocalPassTest, RequiresBatches) {
  EXPECT_THROW(async_local_pass(std::vector<Batch>{}, Vector(2), 0.1), Error);
}

TEST(RunTrainingTest, SynchronizedLeakEqualsVictimUpdate) {
  Rng rng(16);
  const Batch victim = random_batch(4, 6, rng);
  const Batch attacker = random_batch(12, 6, rng);
  TrainingConfig config;
  config.rounds = 10;
  config.seed = 99;
  config.attacker_batch_size = 6;
  const Transcript t = run_training({victim}, attacker, config);
  ASSERT_EQ(t.observations.size(), 10u);
  for (const Observation& obs : t.observations) {
    EXPECT_LE(max_abs_diff(obs.delta,
                           config.lambda * batch_gradient(victim, obs.theta)),
              1e-13);
  }
}

TEST(RunTrainingTest, DeterministicForEqualSeeds) {
  Rng rng(17);
  const std::vector<Batch> victim{random_batch(3, 5, rng),
                                  random_batch(3, 5, rng)};
  const Batch attacker = random_batch(8, 5, rng);
  TrainingConfig config;
  config.mode = Mode::kAsynchronized;
  config.rounds = 12;
  config.shuffle = true;
  config.seed = 5;
  config.attacker_batch_size = 4;
  const Transcript a = run_training(victim, attacker, config);
  const Transcript b = run_training(victim, attacker, config);
  EXPECT_EQ(transcript_to_json(a), transcript_to_json(b));
  for (std::size_t r = 0; r < a.observations.size(); ++r) {
    EXPECT_EQ(a.observations[r].theta, b.observations[r].theta);
  }
  config.seed = 6;
  const Transcript c = run_training(victim, attacker, config);
  EXPECT_NE(a.observations.front().theta, c.observations.front().theta);
}

TEST(RunTrainingTest, InitialModelInUnitBox) {
  Rng rng(18);
  TrainingConfig config;
  config.rounds = 1;
  const Transcript t = run_training({random_batch(2, 30, rng)},
                                    random_batch(2, 30, rng), config);
  for (double v : t.observations.front().theta) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(RunTrainingTest, RejectsInconsistentConfigs) {
  Rng rng(19);
  const Batch b = random_batch(2, 3, rng);
  TrainingConfig config;
  config.rounds = 0;
  EXPECT_THROW(run_training({b}, b, config), Error);
  config.rounds = 2;
  config.lambda = 0.0;
  EXPECT_THROW(run_training({b}, b, config), Error);
  config.lambda = 0.1;
  // Synchronized parties push a single batch gradient.
  EXPECT_THROW(run_training({b, b}, b, config), Error);
  config.mode = Mode::kAsynchronized;
  EXPECT_THROW(run_training(std::vector<Batch>{}, b, config), Error);
  config.parties = 3;
  EXPECT_THROW(run_training({b}, b, config), Error);
  EXPECT_THROW(run_training({random_batch(2, 4, rng)}, b, TrainingConfig{}),
               Error);
}

TEST(RunTrainingTest, MultiPartyLeakIsSumOfVictimUpdates) {
  Rng rng(20);
  std::vector<PartyData> victims;
  for (int p = 0; p < 3; ++p) victims.push_back({{random_batch(3, 5, rng)}});
  TrainingConfig config;
  config.parties = 4;
  config.rounds = 8;
  config.attacker_batch_size = 3;
  const Transcript t = run_training(victims, random_batch(6, 5, rng), config);
  for (const Observation& obs : t.observations) {
    Vector expected(5);
    for (const PartyData& p : victims) {
      expected = expected +
                 config.lambda * batch_gradient(p.batches.front(), obs.theta);
    }
    EXPECT_LE(max_abs_diff(obs.delta, expected), 1e-12);
  }
}

TEST(StackTest, GramOfStackIsSumOfGrams) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Batch> parts{random_batch(3, 6, rng),
                                   random_batch(1, 6, rng),
                                   random_batch(5, 6, rng)};
    Matrix sum(6, 6);
    for (const Batch& b : parts) sum = sum + gram(b);
    EXPECT_EQ(sum, gram(stack_batches(parts)));
  }
}

}  // namespace
}  // namespace gleak
