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
#include "gleak/attack.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "gleak/errors.h"

namespace gleak {
namespace {

std::string Sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

struct AffineFit {
  Matrix coefficients;
  Vector offsets;
  double residual = 0.0;
  std::size_t rank = 0;
};

// Solves delta_t[i] = theta_scale * (G_(i) . theta_t) + offset_scale * v_i
// for every row i, sharing one design matrix across rows.
AffineFit FitAffine(std::span<const Observation> observations,
                    double theta_scale, double offset_scale,
                    double pivot_tolerance) {
  if (observations.empty()) {
    throw RankDeficientError(0, 1, "no observations");
  }
  const std::size_t d = observations.front().theta.size();
  const std::size_t t_count = observations.size();
  for (const Observation& obs : observations) {
    if (obs.theta.size() != d || obs.delta.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "observation lengths differ from " + std::to_string(d));
    }
  }

  Matrix design(t_count, d + 1);
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t c = 0; c < d; ++c) {
      design(t, c) = theta_scale * observations[t].theta[c];
    }
    design(t, d) = offset_scale;
  }
  const std::size_t design_rank = rank(design, pivot_tolerance);
  if (t_count < d + 1 || design_rank < d + 1) {
    throw RankDeficientError(design_rank, d + 1,
                             std::to_string(t_count) + " observations");
  }

  AffineFit fit{Matrix(d, d), Vector(d), 0.0, design_rank};
  Vector rhs(t_count);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < t_count; ++t) {
      rhs[t] = observations[t].delta[i];
    }
    const LinearSolution sol =
        solve_linear_system(design, rhs, pivot_tolerance);
    for (std::size_t c = 0; c < d; ++c) fit.coefficients(i, c) = sol.x[c];
    fit.offsets[i] = sol.x[d];
    fit.residual = std::max(fit.residual, sol.max_residual);
  }
  return fit;
}

double MaxDelta(std::span<const Observation> observations) {
  double worst = 0.0;
  for (const Observation& obs : observations) {
    worst = std::max(worst, max_abs(obs.delta));
  }
  return worst;
}

RecoveredSystem ValidateIntegralBlock(const AffineFit& fit,
                                      std::span<const std::size_t> columns,
                                      std::size_t observation_count,
                                      const RecoveryOptions& options) {
  const Matrix raw_alpha = submatrix(fit.coefficients, columns, columns);
  const Vector raw_beta = subvector(fit.offsets, columns);

  RecoveryDiagnostics diag;
  diag.observations = observation_count;
  diag.design_rank = fit.rank;
  diag.fit_residual = fit.residual;
  diag.asymmetry = max_abs_diff(raw_alpha, transpose(raw_alpha));
  diag.alpha_integrality = integrality_residual(raw_alpha);
  diag.beta_integrality = integrality_residual(raw_beta);

  const double scale = std::max(1.0, max_abs(raw_alpha));
  if (diag.asymmetry > options.symmetry_tolerance * scale) {
    throw Error(ErrorCode::kAsymmetryDetected,
                "recovered alpha is asymmetric by " +
                    Sci(diag.asymmetry));
  }
  const Matrix symmetric = 0.5 * (raw_alpha + transpose(raw_alpha));
  RecoveredSystem out{round_integral(symmetric, options.integrality_tolerance),
                      round_integral(raw_beta, options.integrality_tolerance),
                      diag};
  out.diagnostics.min_pivot = min_symmetric_pivot(out.alpha);
  return out;
}

}  // namespace

RecoveredSystem recover_alpha_beta(std::span<const Observation> observations,
                                   double lambda,
                                   const RecoveryOptions& options) {
  if (observations.empty()) throw RankDeficientError(0, 1, "no observations");
  std::vector<std::size_t> all(observations.front().theta.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return recover_alpha_beta(observations, lambda, all, options);
}

RecoveredSystem recover_alpha_beta(std::span<const Observation> observations,
                                   double lambda,
                                   std::span<const std::size_t> binary_columns,
                                   const RecoveryOptions& options) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be > 0");
  }
  const AffineFit fit = FitAffine(observations, 0.25 * lambda, -0.5 * lambda,
                                  options.pivot_tolerance);
  return ValidateIntegralBlock(fit, binary_columns, observations.size(),
                               options);
}

ClosedFormParams recover_gamma_eta(std::span<const Observation> observations,
                                   double lambda,
                                   const RecoveryOptions& options) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be > 0");
  }
  const AffineFit fit =
      FitAffine(observations, 1.0, -0.5 * lambda, options.pivot_tolerance);
  RecoveryDiagnostics diag;
  diag.observations = observations.size();
  diag.design_rank = fit.rank;
  diag.fit_residual = fit.residual;
  diag.asymmetry = max_abs_diff(fit.coefficients, transpose(fit.coefficients));

  const double limit =
      options.residual_tolerance * std::max(1.0, MaxDelta(observations));
  if (fit.residual > limit) {
    throw Error(ErrorCode::kResidualTooLarge,
                "affine update model misfits by " +
                    Sci(fit.residual) + " (limit " + Sci(limit) + ")");
  }
  return ClosedFormParams{fit.coefficients, fit.offsets, lambda, diag};
}

Matrix closed_form_gamma(std::span<const Matrix> alphas, double lambda) {
  if (alphas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "closed form needs n >= 1");
  }
  const std::size_t d = alphas.front().rows();
  const double c = 0.25 * lambda;
  const Matrix identity = Matrix::Identity(d);
  Matrix gamma(d, d);
  for (const Matrix& alpha : alphas) {
    gamma = gamma + c * matmul(alpha, identity - gamma);
  }
  return gamma;
}

Vector closed_form_eta(std::span<const Matrix> alphas,
                       std::span<const Vector> betas, double lambda) {
  if (alphas.empty() || alphas.size() != betas.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "closed form needs as many betas as alphas (n >= 1)");
  }
  const std::size_t d = alphas.front().rows();
  const Matrix identity = Matrix::Identity(d);
  Vector eta = betas.front();
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    eta = matvec(identity - (0.25 * lambda) * alphas[k], eta) + betas[k];
  }
  return eta;
}

Vector closed_form_delta(std::span<const Matrix> alphas,
                         std::span<const Vector> betas, const Vector& theta,
                         double lambda) {
  const std::size_t n = alphas.size();
  if (n == 0 || betas.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "closed form needs as many betas as alphas (n >= 1)");
  }
  const std::size_t d = theta.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (alphas[i].rows() != d || alphas[i].cols() != d ||
        betas[i].size() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "batch " + std::to_string(i) + " does not match d = " +
                      std::to_string(d));
    }
  }
  const Matrix identity = Matrix::Identity(d);
  std::vector<Matrix> factors;
  factors.reserve(n);
  for (const Matrix& alpha : alphas) {
    factors.push_back(identity - (0.25 * lambda) * alpha);
  }
  // prod_{j=from}^{n} factor_j = factor_n ... factor_from
  auto product_from = [&](std::size_t from) {
    Matrix p = identity;
    for (std::size_t j = from; j < n; ++j) p = matmul(factors[j], p);
    return p;
  };

  const Matrix gamma = identity - product_from(0);
  Vector eta = betas[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    eta = eta + matvec(product_from(i + 1), betas[i]);
  }
  return matvec(gamma, theta) - (0.5 * lambda) * eta;
}

NullityReport gamma_nullity_check(std::span<const Matrix> alphas,
                                  double lambda, double fd_step, double tol) {
  if (alphas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nullity check needs n >= 1");
  }
  const std::size_t n = alphas.size();
  const std::size_t d = alphas.front().rows();
  const std::size_t per_batch = d * (d + 1) / 2;

  NullityReport report;
  report.variable_count = n * per_batch;
  report.counting_bound =
      report.variable_count > d * d ? report.variable_count - d * d : 0;

  std::vector<Matrix> point(alphas.begin(), alphas.end());
  Matrix jacobian(d * d, report.variable_count);
  std::size_t var = 0;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p; q < d; ++q, ++var) {
        const double saved = point[b](p, q);
        auto set = [&](double v) {
          point[b](p, q) = v;
          point[b](q, p) = v;
        };
        set(saved + fd_step);
        const Matrix plus = closed_form_gamma(point, lambda);
        set(saved - fd_step);
        const Matrix minus = closed_form_gamma(point, lambda);
        set(saved);
        for (std::size_t e = 0; e < d * d; ++e) {
          jacobian(e, var) =
              (plus.entries()[e] - minus.entries()[e]) / (2.0 * fd_step);
        }
      }
    }
  }
  report.jacobian_rank = rank(jacobian, tol);
  report.nullity = report.variable_count - report.jacobian_rank;
  return report;
}

bool multiparty_stack_check(std::span<const Batch> party_batches) {
  if (party_batches.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no parties");
  }
  const std::size_t d = party_batches.front().features();
  for (const Batch& b : party_batches) {
    if (b.features() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "parties disagree on the feature count");
    }
  }
  std::vector<std::int64_t> summed(d * d, 0);
  for (const Batch& b : party_batches) {
    for (std::size_t r = 0; r < b.samples(); ++r) {
      for (std::size_t i = 0; i < d; ++i) {
        const auto xi = static_cast<std::int64_t>(b.x()(r, i));
        for (std::size_t j = 0; j < d; ++j) {
          summed[i * d + j] += xi * static_cast<std::int64_t>(b.x()(r, j));
        }
      }
    }
  }
  const Batch stacked = stack_batches(party_batches);
  std::vector<std::int64_t> stacked_gram(d * d, 0);
  for (std::size_t r = 0; r < stacked.samples(); ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        stacked_gram[i * d + j] +=
            static_cast<std::int64_t>(stacked.x()(r, i)) *
            static_cast<std::int64_t>(stacked.x()(r, j));
      }
    }
  }
  return summed == stacked_gram;
}

}  // namespace gleak
