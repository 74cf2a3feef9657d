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
#ifndef GLEAK_ATTACK_H_
#define GLEAK_ATTACK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gleak/fedsim.h"
#include "gleak/linalg.h"
#include "gleak/matrix.h"

namespace gleak {

struct RecoveryOptions {
  double pivot_tolerance = kDefaultPivotTolerance;
  // Relative to max(1, max |alpha|), checked before rounding.
  double symmetry_tolerance = 1e-8;
  // Absolute distance to the nearest integer allowed for alpha and beta.
  double integrality_tolerance = 1e-6;
  // Relative to max(1, max |delta|); only recover_gamma_eta enforces it.
  double residual_tolerance = 1e-8;
};

struct RecoveryDiagnostics {
  std::size_t observations = 0;
  std::size_t design_rank = 0;
  // Largest misfit of the recovered affine map over every observation.
  double fit_residual = 0.0;
  double asymmetry = 0.0;
  double alpha_integrality = 0.0;
  double beta_integrality = 0.0;
  // Smallest symmetric elimination pivot of alpha; >= -1e-9 means PSD.
  double min_pivot = 0.0;
};

// The synchronized leakage: alpha = X^T X and beta = X^T Y.
struct RecoveredSystem {
  Matrix alpha;
  Vector beta;
  RecoveryDiagnostics diagnostics;

  std::size_t features() const noexcept { return beta.size(); }
};

// The asynchronized leakage: delta = gamma theta - lambda/2 eta.
struct ClosedFormParams {
  Matrix gamma;
  Vector eta;
  double lambda = 0.0;
  RecoveryDiagnostics diagnostics;
};

// Row-wise solve of delta_i = lambda (1/4 alpha_(i) theta - 1/2 beta_i) over
// the observations, then symmetry and integrality validation. Needs at least
// d + 1 observations with theta in general position.
//
// Throws RankDeficientError, NotIntegralError or kAsymmetryDetected.
RecoveredSystem recover_alpha_beta(std::span<const Observation> observations,
                                   double lambda,
                                   const RecoveryOptions& options = {});

// Same fit, but only the listed columns are validated and returned. Columns
// outside the list may hold non-binary features whose alpha entries are not
// integral.
RecoveredSystem recover_alpha_beta(std::span<const Observation> observations,
                                   double lambda,
                                   std::span<const std::size_t> binary_columns,
                                   const RecoveryOptions& options = {});

// Fits delta = gamma theta - lambda/2 eta without integrality. Throws
// kResidualTooLarge when the affine model does not explain every
// observation, which is what a shuffled batch order produces.
ClosedFormParams recover_gamma_eta(std::span<const Observation> observations,
                                   double lambda,
                                   const RecoveryOptions& options = {});

// I - prod_i (I - lambda/4 alpha_i), product accumulated right to left.
// Evaluated incrementally as gamma_k = gamma_{k-1} + c alpha_k (I -
// gamma_{k-1}) so small gammas keep full relative precision.
Matrix closed_form_gamma(std::span<const Matrix> alphas, double lambda);

// sum_{i<n} [prod_{j>i} (I - lambda/4 alpha_j)] beta_i + beta_n.
Vector closed_form_eta(std::span<const Matrix> alphas,
                       std::span<const Vector> betas, double lambda);

// The accumulated asynchronized update written out with explicit products.
Vector closed_form_delta(std::span<const Matrix> alphas,
                         std::span<const Vector> betas, const Vector& theta,
                         double lambda);

struct NullityReport {
  std::size_t jacobian_rank = 0;
  std::size_t variable_count = 0;
  std::size_t nullity = 0;
  // n d(d+1)/2 - d^2, clamped at zero.
  std::size_t counting_bound = 0;
};

// Central-difference Jacobian of (symmetric entries of alpha_1..alpha_n) ->
// gamma, then its numeric rank.
NullityReport gamma_nullity_check(std::span<const Matrix> alphas,
                                  double lambda, double fd_step = 1e-6,
                                  double tol = 1e-8);

// Exact integer comparison of sum_i X_i^T X_i with P^T P, P stacking every
// party's rows.
bool multiparty_stack_check(std::span<const Batch> party_batches);

}  // namespace gleak

#endif  // GLEAK_ATTACK_H_
