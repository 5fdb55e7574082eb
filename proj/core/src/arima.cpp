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

#include "gapfill/arima.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

namespace {

std::vector<double> difference(std::span<const double> y) {
  std::vector<double> out;
  if (y.size() < 2) return out;
  out.reserve(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) out.push_back(y[i] - y[i - 1]);
  return out;
}

double variance(std::span<const double> y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(y.size());
}

// Least squares for rows t in [first, n): target w_t, regressors from `fill`.
template <typename Fill>
Eigen::VectorXd least_squares(std::size_t first, std::size_t n, std::size_t cols, const std::vector<double>& w,
                              Fill fill) {
  const auto rows = static_cast<Eigen::Index>(n - first);
  Eigen::MatrixXd X(rows, static_cast<Eigen::Index>(cols));
  Eigen::VectorXd target(rows);
  for (std::size_t t = first; t < n; ++t) {
    const auto r = static_cast<Eigen::Index>(t - first);
    target(r) = w[t];
    fill(t, X.row(r));
  }
  return X.colPivHouseholderQr().solve(target);
}

}  // namespace

bool ar_is_stationary(std::span<const double> phi, double tol) {
  if (phi.empty()) return true;
  const auto p = static_cast<Eigen::Index>(phi.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) companion(0, i) = phi[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  const Eigen::VectorXcd eig = companion.eigenvalues();
  // Eigenvalues of the companion matrix are the reciprocals of the roots.
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig(i)) * (1.0 + tol) >= 1.0) return false;
  }
  return true;
}

std::vector<double> make_invertible(std::span<const double> theta, double max_modulus) {
  if (theta.empty()) return {};
  const auto q = static_cast<Eigen::Index>(theta.size());
  // Roots of 1 + theta_1 z + ... + theta_q z^q are the reciprocals of the
  // eigenvalues of this companion matrix.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) companion(0, i) = -theta[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 1; i < q; ++i) companion(i, i - 1) = 1.0;
  Eigen::VectorXcd lambda = companion.eigenvalues();
  bool changed = false;
  for (Eigen::Index i = 0; i < q; ++i) {
    double r = std::abs(lambda(i));
    if (r > 1.0) {
      lambda(i) = 1.0 / std::conj(lambda(i));
      r = 1.0 / r;
      changed = true;
    }
    if (r > max_modulus) {
      lambda(i) *= max_modulus / r;
      changed = true;
    }
  }
  if (!changed) return {theta.begin(), theta.end()};
  // Expand prod (1 - lambda_i z).
  std::vector<std::complex<double>> c(static_cast<std::size_t>(q) + 1, 0.0);
  c[0] = 1.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    for (std::size_t k = static_cast<std::size_t>(i) + 1; k > 0; --k) c[k] -= lambda(i) * c[k - 1];
  }
  std::vector<double> out(static_cast<std::size_t>(q));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c[k + 1].real();
  return out;
}

std::size_t select_differencing(std::span<const double> history) {
  if (history.size() < 3) return 0;
  const auto diffed = difference(history);
  return variance(diffed) < variance(history) ? 1 : 0;
}

ArimaModel arima_fit(std::span<const double> history, const ArimaOrder& order) {
  const auto [p, d, q] = order;
  if (p > 10 || q > 10 || d > 2) raise(ErrorKind::kInvalidArgument, "ARIMA order limited to p,q <= 10, d <= 2");
  const std::size_t needed = 10 * (p + q) + d + 20;
  if (history.size() < needed) {
    raise(ErrorKind::kHistoryTooShort, "ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," +
                                           std::to_string(q) + ") needs " + std::to_string(needed) +
                                           " points, got " + std::to_string(history.size()));
  }

  std::vector<double> z(history.begin(), history.end());
  for (std::size_t k = 0; k < d; ++k) z = difference(z);
  const std::size_t n = z.size();

  ArimaModel model;
  model.order = order;
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(n);
  model.intercept = mean;
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) w[t] = z[t] - mean;

  if (p == 0 && q == 0) return model;

  std::vector<double> resid(n, 0.0);
  std::size_t first = p;
  if (q > 0) {
    const std::size_t long_order = std::max<std::size_t>(std::min<std::size_t>(20, n / 4), p + q);
    const Eigen::VectorXd a = least_squares(long_order, n, long_order, w, [&](std::size_t t, auto row) {
      for (std::size_t i = 0; i < long_order; ++i) row(static_cast<Eigen::Index>(i)) = w[t - 1 - i];
    });
    for (std::size_t t = long_order; t < n; ++t) {
      double fit = 0.0;
      for (std::size_t i = 0; i < long_order; ++i) fit += a(static_cast<Eigen::Index>(i)) * w[t - 1 - i];
      resid[t] = w[t] - fit;
    }
    first = long_order + std::max(p, q);
  }

  const Eigen::VectorXd coef = least_squares(first, n, p + q, w, [&](std::size_t t, auto row) {
    for (std::size_t i = 0; i < p; ++i) row(static_cast<Eigen::Index>(i)) = w[t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) row(static_cast<Eigen::Index>(p + j)) = resid[t - 1 - j];
  });
  for (std::size_t i = 0; i < p; ++i) model.phi.push_back(coef(static_cast<Eigen::Index>(i)));
  for (std::size_t j = 0; j < q; ++j) model.theta.push_back(coef(static_cast<Eigen::Index>(p + j)));

  for (double c : model.phi) {
    if (!std::isfinite(c)) raise(ErrorKind::kNumericalFailure, "ARIMA least squares produced non-finite coefficients");
  }
  for (double c : model.theta) {
    if (!std::isfinite(c)) raise(ErrorKind::kNumericalFailure, "ARIMA least squares produced non-finite coefficients");
  }
  if (!ar_is_stationary(model.phi)) {
    raise(ErrorKind::kNonStationaryFit, "fitted AR polynomial has a root on or inside the unit circle");
  }
  model.theta = make_invertible(model.theta);
  return model;
}

std::vector<double> arima_forecast(const ArimaModel& model, std::span<const double> history, std::size_t horizon) {
  const std::size_t p = model.phi.size();
  const std::size_t q = model.theta.size();
  const std::size_t d = model.order.d;
  if (history.size() <= d) raise(ErrorKind::kHistoryTooShort, "history shorter than the differencing order");

  // levels[k] is the history differenced k times.
  std::vector<std::vector<double>> levels{std::vector<double>(history.begin(), history.end())};
  for (std::size_t k = 0; k < d; ++k) levels.push_back(difference(levels.back()));

  std::vector<double> w = levels.back();
  for (double& v : w) v -= model.intercept;
  const std::size_t n = w.size();
  std::vector<double> e(n + horizon, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (t < p) continue;
    double fit = 0.0;
    for (std::size_t i = 0; i < p; ++i) fit += model.phi[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < q && j < t; ++j) fit += model.theta[j] * e[t - 1 - j];
    e[t] = w[t] - fit;
  }

  w.resize(n + horizon);
  for (std::size_t h = 0; h < horizon; ++h) {
    const std::size_t t = n + h;
    double v = 0.0;
    for (std::size_t i = 0; i < p && i < t; ++i) v += model.phi[i] * w[t - 1 - i];
    for (std::size_t j = 0; j < q && j < t; ++j) v += model.theta[j] * e[t - 1 - j];
    w[t] = v;
  }

  std::vector<double> out(horizon);
  for (std::size_t h = 0; h < horizon; ++h) out[h] = w[n + h] + model.intercept;
  for (std::size_t k = d; k-- > 0;) {
    double last = levels[k].back();
    for (double& v : out) {
      last += v;
      v = last;
    }
  }
  return out;
}

ArimaForecaster::ArimaForecaster(std::size_t p, std::optional<std::size_t> d, std::size_t q) : p_(p), d_(d), q_(q) {
  if (p_ > 10 || q_ > 10 || (d_ && *d_ > 2)) {
    raise(ErrorKind::kInvalidArgument, "ARIMA order limited to p,q <= 10, d <= 2");
  }
}

ArimaModel ArimaForecaster::fit(std::span<const double> history) const {
  const std::size_t d = d_ ? *d_ : select_differencing(history);
  return arima_fit(history, ArimaOrder{p_, d, q_});
}

std::vector<double> ArimaForecaster::forecast(std::span<const double> history, std::size_t horizon) const {
  return arima_forecast(fit(history), history, horizon);
}

FitDiagnostics ArimaForecaster::diagnostics(std::span<const double> history) const {
  const auto m = fit(history);
  FitDiagnostics out{{"d", static_cast<double>(m.order.d)}, {"intercept", m.intercept}};
  for (std::size_t i = 0; i < m.phi.size(); ++i) out.emplace_back("phi" + std::to_string(i + 1), m.phi[i]);
  for (std::size_t j = 0; j < m.theta.size(); ++j) out.emplace_back("theta" + std::to_string(j + 1), m.theta[j]);
  return out;
}

}  // namespace gapfill
