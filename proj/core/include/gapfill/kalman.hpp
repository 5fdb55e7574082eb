/*
 * Copyright 2026 The gapfill Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gapfill/forecaster.hpp"

namespace gapfill {

struct StructuralVariances {
  double observation = 1.0;
  double level = 1.0;
  double trend = 1.0;
  double seasonal = 1.0;
};

/// Local level + local trend + dummy seasonal model with period m.
///
/// State layout (the "logical" layout used by every public matrix):
///   [level, trend, s_0, s_1, ..., s_{m-2}]
/// where s_0 is the seasonal effect of the current step and s_k the effect
/// k steps back. Transition:
///   level' = level + trend + eta_level
///   trend' = trend + eta_trend
///   s_0'   = -(s_0 + ... + s_{m-2}) + eta_seasonal
///   s_k'   = s_{k-1}
/// Observation: y = level + s_0 + eps.
struct StructuralStateSpace {
  std::size_t season_length = 48;
  StructuralVariances variances{};

  std::size_t state_dim() const { return season_length + 1; }
  Eigen::MatrixXd transition() const;
  Eigen::VectorXd observation_vector() const;
  Eigen::MatrixXd process_noise() const;
};

/// Gaussian log-likelihood pieces of one filter pass. With the observation
/// variance fixed at 1 these give the likelihood with that variance
/// concentrated out.
struct LikelihoodTerms {
  double sum_log_f = 0.0;
  double sum_scaled_sq = 0.0;  // sum of v^2 / F
  std::size_t count = 0;

  double log_likelihood() const;        // at the variances the filter ran with
  double profile_sigma2() const;        // MLE of the observation-variance scale
  double profile_log_likelihood() const;
};

struct FilterInit {
  Eigen::VectorXd mean;           // logical layout, length m + 1
  double prior_variance = 1e6;    // P_0 = prior_variance * I
  std::size_t burn_in = 0;        // observed steps left out of the likelihood
};

struct SmoothOptions {
  bool keep_covariances = false;
  /// Backward pass stops at this index (earlier smoothed values are left
  /// equal to the filtered ones).
  std::size_t smooth_from = 0;
};

struct SmoothResult {
  LikelihoodTerms terms;
  std::vector<double> filtered_signal;  // Z' a_{t|t}
  std::vector<double> smoothed_signal;  // Z' a_{t|n}
  std::vector<Eigen::VectorXd> smoothed_state;  // logical layout
  // Logical layout; filled only with keep_covariances.
  std::vector<Eigen::MatrixXd> predicted_cov;  // P_{t|t-1}
  std::vector<Eigen::MatrixXd> filtered_cov;   // P_{t|t}
  std::vector<Eigen::MatrixXd> smoothed_cov;   // P_{t|n}
};

/// Kalman filter and Rauch-Tung-Striebel smoother specialised to the
/// structural model. The seasonal block is kept as a ring buffer and the
/// covariance as a lower triangle, so a predict step costs one symmetric
/// matrix-vector product and an update one rank-1 downdate. Missing samples
/// skip the update.
class StructuralKalman {
 public:
  explicit StructuralKalman(StructuralStateSpace model);

  const StructuralStateSpace& model() const noexcept { return model_; }

  LikelihoodTerms likelihood(std::span<const double> y, std::span<const std::uint8_t> present,
                             const FilterInit& init) const;
  SmoothResult smooth(std::span<const double> y, std::span<const std::uint8_t> present, const FilterInit& init,
                      const SmoothOptions& options = {}) const;

 private:
  StructuralStateSpace model_;
};

/// Data-driven initial state: classical decomposition of the first two
/// seasons when they are fully observed, otherwise the mean of the present
/// values with zero trend and seasonal.
Eigen::VectorXd structural_initial_state(std::span<const double> y, std::span<const std::uint8_t> present,
                                         std::size_t season_length);

struct NoiseGrid {
  // log10 ranges of the level/trend/seasonal variances relative to the
  // observation variance.
  double level_lo = -4.0, level_hi = 1.0;
  double trend_lo = -8.0, trend_hi = -2.0;
  double seasonal_lo = -6.0, seasonal_hi = 0.0;
  std::size_t points = 5;
  /// Second pass at half spacing around the best node; 0 disables it.
  std::size_t refine_points = 3;
};

struct StructuralFit {
  StructuralVariances variances;  // absolute, observation variance = sigma2
  double log_likelihood = 0.0;
  std::size_t evaluations = 0;
};

/// Maximum-likelihood noise variances by a two-stage grid search over the
/// three variance ratios (observation variance profiled out): a
/// points^3 log-spaced grid, then a refine_points^3 grid at half spacing
/// around the best node.
StructuralFit estimate_structural_noise(std::span<const double> y, std::span<const std::uint8_t> present,
                                        std::size_t season_length, const NoiseGrid& grid = {});

/// Fills the gap with the smoothed signal of the model estimated on up to
/// `context_len` points on each side of it.
std::vector<double> kalman_smooth_impute(const MeterSeries& series, const Gap& gap, std::size_t season_length = 48,
                                         std::size_t context_len = 336);

class KalmanSmoothingImputer final : public DirectImputer {
 public:
  explicit KalmanSmoothingImputer(std::size_t season_length = 48, std::size_t context_len = 336);
  std::string_view name() const override { return "Kalman Smoothing"; }
  std::vector<double> impute(const MeterSeries& series, const Gap& gap) const override;
  FitDiagnostics diagnostics(const MeterSeries& series, const Gap& gap) const override;

 private:
  std::size_t season_length_;
  std::size_t context_len_;
};

}  // namespace gapfill
