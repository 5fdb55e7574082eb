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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gapfill/forecaster.hpp"

namespace gapfill {

struct ArimaOrder {
  std::size_t p = 3;
  std::size_t d = 0;
  std::size_t q = 1;
};

/// ARIMA(p,d,q) on the d-times differenced series z:
///   (z_t - mu) = sum phi_i (z_{t-i} - mu) + e_t + sum theta_j e_{t-j}.
struct ArimaModel {
  ArimaOrder order;
  std::vector<double> phi;
  std::vector<double> theta;
  double intercept = 0.0;
};

/// Hannan-Rissanen estimation: a long autoregression (order min(20, n/4))
/// supplies residual proxies, then phi/theta come from one least-squares
/// regression on lagged values and lagged proxies. The intercept is the mean
/// of the differenced series. Throws NonStationaryFit when an AR root lies
/// on or inside the unit circle. MA roots inside the unit circle are
/// reflected outside it (see make_invertible).
ArimaModel arima_fit(std::span<const double> history, const ArimaOrder& order);

/// Runs the ARMA recursion forward with future shocks at zero, then
/// integrates back d times from the last observed levels. `history` must be
/// the series the model was fitted on; it seeds the residual state.
std::vector<double> arima_forecast(const ArimaModel& model, std::span<const double> history, std::size_t horizon);

/// MA coefficients whose polynomial 1 + theta_1 z + ... has every root at
/// modulus >= 1/max_modulus: roots inside the unit circle are replaced by
/// their reciprocal conjugates, which keeps the autocorrelation shape.
std::vector<double> make_invertible(std::span<const double> theta, double max_modulus = 0.99);

/// 1 when differencing lowers the sample variance, else 0.
std::size_t select_differencing(std::span<const double> history);

/// True when all roots of 1 - phi_1 z - ... - phi_p z^p satisfy |z| > 1 + tol.
bool ar_is_stationary(std::span<const double> phi, double tol = 1e-6);

class ArimaForecaster final : public Forecaster {
 public:
  /// `d` unset selects the differencing order per history.
  ArimaForecaster(std::size_t p = 3, std::optional<std::size_t> d = std::nullopt, std::size_t q = 1);
  std::string_view name() const override { return "ARIMA"; }
  std::vector<double> forecast(std::span<const double> history, std::size_t horizon) const override;
  FitDiagnostics diagnostics(std::span<const double> history) const override;

 private:
  ArimaModel fit(std::span<const double> history) const;

  std::size_t p_;
  std::optional<std::size_t> d_;
  std::size_t q_;
};

}  // namespace gapfill
