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
#include "gleak/fedsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "gleak/errors.h"

namespace gleak {
namespace {

void RequireFeatures(const Batch& batch, std::size_t d, const char* what) {
  if (batch.features() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": batch has " +
                    std::to_string(batch.features()) + " features, model has " +
                    std::to_string(d));
  }
}

Batch SampleRows(const Batch& pool, std::size_t count, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.samples() - 1);
  const std::size_t d = pool.features();
  Matrix x(count, d);
  Vector y(count);
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t src = pick(rng);
    for (std::size_t c = 0; c < d; ++c) x(r, c) = pool.x()(src, c);
    y[r] = pool.y()[src];
  }
  return Batch(std::move(x), std::move(y));
}

}  // namespace

Batch::Batch(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "batch features " + x_.shape() + " with " +
                    std::to_string(y_.size()) + " labels");
  }
  for (double v : x_.entries()) {
    if (v != 0.0 && v != 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "feature entry is not 0 or 1");
    }
  }
  for (double v : y_) {
    if (v != 1.0 && v != -1.0) {
      throw Error(ErrorCode::kInvalidArgument, "label is not -1 or +1");
    }
  }
}

Batch random_batch(std::size_t m, std::size_t d, Rng& rng, double density) {
  std::bernoulli_distribution bit(density);
  std::bernoulli_distribution sign(0.5);
  Matrix x(m, d);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < d; ++c) x(r, c) = bit(rng) ? 1.0 : 0.0;
  }
  Vector y(m);
  for (std::size_t r = 0; r < m; ++r) y[r] = sign(rng) ? 1.0 : -1.0;
  return Batch(std::move(x), std::move(y));
}

Batch stack_batches(std::span<const Batch> batches) {
  if (batches.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to stack");
  }
  const std::size_t d = batches.front().features();
  std::size_t rows = 0;
  for (const Batch& b : batches) {
    RequireFeatures(b, d, "stack_batches");
    rows += b.samples();
  }
  Matrix x(rows, d);
  Vector y(rows);
  std::size_t at = 0;
  for (const Batch& b : batches) {
    for (std::size_t r = 0; r < b.samples(); ++r, ++at) {
      for (std::size_t c = 0; c < d; ++c) x(at, c) = b.x()(r, c);
      y[at] = b.y()[r];
    }
  }
  return Batch(std::move(x), std::move(y));
}

Matrix gram(const Batch& batch) {
  return matmul(transpose(batch.x()), batch.x());
}

Vector label_correlation(const Batch& batch) {
  return matvec(transpose(batch.x()), batch.y());
}

std::string_view ModeName(Mode mode) {
  return mode == Mode::kSynchronized ? "synchronized" : "asynchronized";
}

Mode ParseMode(std::string_view name) {
  if (name == "synchronized" || name == "sync") return Mode::kSynchronized;
  if (name == "asynchronized" || name == "async") return Mode::kAsynchronized;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + std::string(name) + "'");
}

void Validate(const TrainingConfig& config) {
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be > 0");
  }
  if (config.rounds == 0) {
    throw Error(ErrorCode::kInvalidArgument, "rounds must be >= 1");
  }
  if (config.parties < 2) {
    throw Error(ErrorCode::kInvalidArgument, "parties must be >= 2");
  }
}

double approx_loss(const Vector& theta, const Vector& x, double y) {
  if (y != 1.0 && y != -1.0) {
    throw Error(ErrorCode::kInvalidArgument, "label is not -1 or +1");
  }
  const double z = dot(theta, x);
  return std::numbers::ln2 - 0.5 * z * y + 0.125 * z * z;
}

double total_loss(const Batch& batch, const Vector& theta) {
  RequireFeatures(batch, theta.size(), "total_loss");
  double sum = 0.0;
  for (std::size_t r = 0; r < batch.samples(); ++r) {
    const std::span<const double> row = batch.x().row(r);
    sum += approx_loss(theta, Vector(std::vector<double>(row.begin(), row.end())),
                       batch.y()[r]);
  }
  return sum;
}

Vector batch_gradient(const Batch& batch, const Vector& theta) {
  RequireFeatures(batch, theta.size(), "batch_gradient");
  return 0.25 * matvec(gram(batch), theta) - 0.5 * label_correlation(batch);
}

SyncRoundResult sync_round(std::span<const Batch> batches_per_party,
                           const Vector& theta, double lambda) {
  if (batches_per_party.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sync_round without parties");
  }
  std::vector<Vector> deltas;
  deltas.reserve(batches_per_party.size());
  Vector sum(theta.size());
  for (const Batch& b : batches_per_party) {
    deltas.push_back(lambda * batch_gradient(b, theta));
    sum = sum + deltas.back();
  }
  const double k = static_cast<double>(batches_per_party.size());
  return SyncRoundResult{theta - (1.0 / k) * sum, std::move(deltas)};
}

Vector async_local_pass(std::span<const Batch> batches, const Vector& theta,
                        double lambda) {
  if (batches.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "async pass over zero batches");
  }
  Vector local = theta;
  for (const Batch& b : batches) {
    local = local - lambda * batch_gradient(b, local);
  }
  return theta - local;
}

Transcript run_training(std::span<const PartyData> victims,
                        const Batch& attacker_pool,
                        const TrainingConfig& config) {
  Validate(config);
  if (victims.size() + 1 != config.parties) {
    throw Error(ErrorCode::kInvalidArgument,
                "config has " + std::to_string(config.parties) +
                    " parties but " + std::to_string(victims.size()) +
                    " victims were given");
  }
  const std::size_t d = attacker_pool.features();
  for (const PartyData& party : victims) {
    if (party.batches.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "victim party without batches");
    }
    if (config.mode == Mode::kSynchronized && party.batches.size() != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "synchronized parties push one batch gradient per round");
    }
    for (const Batch& b : party.batches) RequireFeatures(b, d, "run_training");
  }

  Rng rng(config.seed);
  std::uniform_real_distribution<double> init(-1.0, 1.0);
  Vector theta(d);
  for (double& t : theta) t = init(rng);

  Transcript transcript;
  transcript.config = config;
  transcript.ground_truth.assign(victims.begin(), victims.end());
  transcript.observations.reserve(config.rounds);

  const double k = static_cast<double>(config.parties);
  std::vector<std::vector<Batch>> ordered;
  ordered.reserve(victims.size());
  for (const PartyData& party : victims) ordered.push_back(party.batches);

  for (std::size_t round = 0; round < config.rounds; ++round) {
    if (config.shuffle && config.mode == Mode::kAsynchronized) {
      for (auto& batches : ordered) std::shuffle(batches.begin(), batches.end(), rng);
    }
    const Batch attacker_batch =
        config.attacker_batch_size == 0
            ? attacker_pool
            : SampleRows(attacker_pool, config.attacker_batch_size, rng);

    std::vector<Vector> deltas;
    deltas.reserve(config.parties);
    if (config.mode == Mode::kSynchronized) {
      std::vector<Batch> per_party;
      per_party.reserve(config.parties);
      for (const auto& batches : ordered) per_party.push_back(batches.front());
      per_party.push_back(attacker_batch);
      deltas = sync_round(per_party, theta, config.lambda).deltas;
    } else {
      for (const auto& batches : ordered) {
        deltas.push_back(async_local_pass(batches, theta, config.lambda));
      }
      deltas.push_back(async_local_pass(std::span(&attacker_batch, 1), theta,
                                        config.lambda));
    }

    Vector mean(d);
    for (const Vector& delta : deltas) mean = mean + delta;
    mean = (1.0 / k) * mean;
    const Vector next = theta - mean;

    // The attacker sees theta before and after the round plus its own push.
    Vector leaked = k * (theta - next) - deltas.back();
    transcript.observations.push_back(Observation{theta, std::move(leaked)});
    theta = next;
  }
  return transcript;
}

Transcript run_training(const std::vector<Batch>& victim_batches,
                        const Batch& attacker_pool,
                        const TrainingConfig& config) {
  const PartyData victim{victim_batches};
  return run_training(std::span(&victim, 1), attacker_pool, config);
}

}  // namespace gleak
