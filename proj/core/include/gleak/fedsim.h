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
#ifndef GLEAK_FEDSIM_H_
#define GLEAK_FEDSIM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "gleak/matrix.h"

namespace gleak {

using Rng = std::mt19937_64;

// A party's private mini-batch: binary features and +-1 labels.
class Batch {
 public:
  // Throws kInvalidArgument unless every x entry is 0/1 and every y entry is
  // -1/+1, and kDimensionMismatch unless x.rows() == y.size().
  Batch(Matrix x, Vector y);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  std::size_t samples() const noexcept { return x_.rows(); }
  std::size_t features() const noexcept { return x_.cols(); }

  friend bool operator==(const Batch&, const Batch&) = default;

 private:
  Matrix x_;
  Vector y_;
};

// Bernoulli(density) features and uniform +-1 labels.
Batch random_batch(std::size_t m, std::size_t d, Rng& rng,
                   double density = 0.5);

// Row-stacks the batches in order.
Batch stack_batches(std::span<const Batch> batches);

// X^T X and X^T Y, computed in floating point.
Matrix gram(const Batch& batch);
Vector label_correlation(const Batch& batch);

enum class Mode { kSynchronized, kAsynchronized };

std::string_view ModeName(Mode mode);
Mode ParseMode(std::string_view name);

struct TrainingConfig {
  double lambda = 0.1;
  Mode mode = Mode::kSynchronized;
  std::size_t parties = 2;
  std::size_t rounds = 1;
  bool shuffle = false;
  std::uint64_t seed = 0;
  // Rows the attacker samples (with replacement) from its own pool for each
  // round's SGD step. 0 means the whole pool every round.
  std::size_t attacker_batch_size = 0;
};

// Throws kInvalidArgument on lambda <= 0, rounds == 0 or parties < 2.
void Validate(const TrainingConfig& config);

// One round as seen by the attacker: the global model the round started
// from and the victims' combined pushed update.
struct Observation {
  Vector theta;
  Vector delta;
};

// Everything one non-attacking party trains on. Synchronized runs require
// exactly one batch; asynchronized runs visit the batches in order.
struct PartyData {
  std::vector<Batch> batches;
};

struct Transcript {
  TrainingConfig config;
  std::vector<Observation> observations;
  // Victim parties' secret data, kept for test oracles only.
  std::vector<PartyData> ground_truth;
};

// log 2 - (theta.x) y / 2 + (theta.x)^2 / 8.
double approx_loss(const Vector& theta, const Vector& x, double y);

// Sum of approx_loss over the batch.
double total_loss(const Batch& batch, const Vector& theta);

// 1/4 X^T X theta - 1/2 X^T Y.
Vector batch_gradient(const Batch& batch, const Vector& theta);

struct SyncRoundResult {
  Vector new_theta;
  std::vector<Vector> deltas;
};

// Every party pushes lambda * gradient of its batch at theta; the server
// subtracts the mean of the pushed updates.
SyncRoundResult sync_round(std::span<const Batch> batches_per_party,
                           const Vector& theta, double lambda);

// Sequential local SGD over the batches; returns theta_1 - theta_{n+1}.
Vector async_local_pass(std::span<const Batch> batches, const Vector& theta,
                        double lambda);

// Runs config.rounds rounds with victims.size() + 1 == config.parties. The
// attacker is the last party. Each observation holds the model before the
// round and parties * (aggregate step) - (attacker's own update), which is
// the sum of the victims' pushed updates.
Transcript run_training(std::span<const PartyData> victims,
                        const Batch& attacker_pool,
                        const TrainingConfig& config);

// Two-party form: one victim holding victim_batches.
Transcript run_training(const std::vector<Batch>& victim_batches,
                        const Batch& attacker_pool,
                        const TrainingConfig& config);

}  // namespace gleak

#endif  // GLEAK_FEDSIM_H_
