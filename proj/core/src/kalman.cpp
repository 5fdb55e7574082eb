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

#include "gapfill/kalman.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapfill/error.hpp"

namespace gapfill {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::MatrixXd StructuralStateSpace::transition() const {
  const auto dim = static_cast<Index>(state_dim());
  MatrixXd t = MatrixXd::Zero(dim, dim);
  t(0, 0) = 1.0;
  t(0, 1) = 1.0;
  t(1, 1) = 1.0;
  for (Index j = 2; j < dim; ++j) t(2, j) = -1.0;
  for (Index k = 3; k < dim; ++k) t(k, k - 1) = 1.0;
  return t;
}

Eigen::VectorXd StructuralStateSpace::observation_vector() const {
  VectorXd z = VectorXd::Zero(static_cast<Index>(state_dim()));
  z(0) = 1.0;
  z(2) = 1.0;
  return z;
}

Eigen::MatrixXd StructuralStateSpace::process_noise() const {
  const auto dim = static_cast<Index>(state_dim());
  MatrixXd q = MatrixXd::Zero(dim, dim);
  q(0, 0) = variances.level;
  q(1, 1) = variances.trend;
  q(2, 2) = variances.seasonal;
  return q;
}

double LikelihoodTerms::log_likelihood() const {
  const auto n = static_cast<double>(count);
  return -0.5 * (n * std::log(2.0 * std::numbers::pi) + sum_log_f + sum_scaled_sq);
}

double LikelihoodTerms::profile_sigma2() const {
  if (count == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::max(sum_scaled_sq / static_cast<double>(count), std::numeric_limits<double>::min());
}

double LikelihoodTerms::profile_log_likelihood() const {
  const auto n = static_cast<double>(count);
  return -0.5 * (n * std::log(2.0 * std::numbers::pi * profile_sigma2()) + sum_log_f + n);
}

namespace {

// Filter state in the physical layout: slots 0/1 hold level/trend, slots
// 2..m hold the seasonal ring; logical s_k lives in slot 2 + (head + k) % r.
// Only the lower triangle of `cov` is maintained.
class RingFilter {
 public:
  RingFilter(const StructuralStateSpace& model, const FilterInit& init)
      : dim_(static_cast<Index>(model.state_dim())),
        ring_(dim_ - 2),
        v_(model.variances),
        mean_(init.mean),
        cov_(MatrixXd::Identity(dim_, dim_) * init.prior_variance),
        ring_indicator_(VectorXd::Zero(dim_)),
        gain_(dim_),
        col_sums_(dim_) {
    ring_indicator_.tail(ring_).setOnes();
  }

  Index season_slot() const { return 2 + head_; }
  Index head() const { return head_; }
  const VectorXd& mean() const { return mean_; }

  double signal() const { return mean_(0) + mean_(season_slot()); }

  MatrixXd full_cov() const { return cov_.selfadjointView<Eigen::Lower>(); }

  void update(double y, double& innovation, double& f) {
    const Index h = season_slot();
    for (Index j = 0; j < dim_; ++j) gain_(j) = cov_(j, 0) + sym(j, h);
    f = gain_(0) + gain_(h) + v_.observation;
    innovation = y - signal();
    mean_ += gain_ * (innovation / f);
    cov_.selfadjointView<Eigen::Lower>().rankUpdate(gain_, -1.0 / f);
  }

  void predict() {
    col_sums_.noalias() = cov_.selfadjointView<Eigen::Lower>() * ring_indicator_;
    const double ring_total = col_sums_.tail(ring_).sum();
    const double pll = cov_(0, 0);
    const double plb = cov_(1, 0);
    const double pbb = cov_(1, 1);

    head_ = (head_ + ring_ - 1) % ring_;
    const Index z = season_slot();

    cov_.col(0).tail(ring_) += cov_.col(1).tail(ring_);
    cov_(0, 0) = pll + 2.0 * plb + pbb + v_.level;
    cov_(1, 0) = plb + pbb;
    cov_(1, 1) += v_.trend;
    for (Index j = 2; j < z; ++j) cov_(z, j) = -col_sums_(j);
    for (Index j = z + 1; j < dim_; ++j) cov_(j, z) = -col_sums_(j);
    cov_(z, z) = ring_total + v_.seasonal;
    cov_(z, 0) = -(col_sums_(0) + col_sums_(1));
    cov_(z, 1) = -col_sums_(1);

    const double seasonal_total = mean_.tail(ring_).sum();
    mean_(0) += mean_(1);
    mean_(z) = -seasonal_total;
  }

 private:
  double sym(Index i, Index j) const { return i >= j ? cov_(i, j) : cov_(j, i); }

  Index dim_;
  Index ring_;
  StructuralVariances v_;
  VectorXd mean_;
  MatrixXd cov_;
  VectorXd ring_indicator_;
  VectorXd gain_;
  VectorXd col_sums_;
  Index head_ = 0;
};

// Physical slot -> logical index for a given ring head.
std::vector<Index> logical_order(Index dim, Index head) {
  const Index ring = dim - 2;
  std::vector<Index> order(static_cast<std::size_t>(dim));
  order[0] = 0;
  order[1] = 1;
  for (Index p = 2; p < dim; ++p) order[static_cast<std::size_t>(p)] = 2 + ((p - 2 - head) % ring + ring) % ring;
  return order;
}

VectorXd to_logical(const VectorXd& x, Index head) {
  const auto order = logical_order(x.size(), head);
  VectorXd out(x.size());
  for (Index p = 0; p < x.size(); ++p) out(order[static_cast<std::size_t>(p)]) = x(p);
  return out;
}

MatrixXd to_logical(const MatrixXd& m, Index head) {
  const auto order = logical_order(m.rows(), head);
  MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) = m(i, j);
  }
  return out;
}

// T' x, mapping a vector from the layout after a predict (new seasonal
// slot z) back to the layout before it.
VectorXd transition_transpose_apply(const VectorXd& x, Index z) {
  VectorXd out = x;
  out(1) = x(0) + x(1);
  for (Index i = 2; i < x.size(); ++i) out(i) = x(i) - x(z);
  out(z) = -x(z);
  return out;
}

// T M on rows, same layout convention.
MatrixXd transition_rows_apply(const MatrixXd& m, Index z) {
  MatrixXd out = m;
  out.row(0) += m.row(1);
  out.row(z) = -m.bottomRows(m.rows() - 2).colwise().sum();
  return out;
}

void check_inputs(const StructuralStateSpace& model, std::span<const double> y, std::span<const std::uint8_t> present,
                  const FilterInit& init) {
  if (y.size() != present.size() || y.empty()) {
    raise(ErrorKind::kLengthMismatch, "Kalman inputs need equal non-zero lengths");
  }
  if (init.mean.size() != static_cast<Index>(model.state_dim())) {
    raise(ErrorKind::kInvalidArgument, "initial state has the wrong dimension");
  }
}

}  // namespace

StructuralKalman::StructuralKalman(StructuralStateSpace model) : model_(model) {
  if (model_.season_length < 3) raise(ErrorKind::kInvalidArgument, "structural model needs season length >= 3");
  const auto& v = model_.variances;
  if (!(v.observation > 0.0 && v.level > 0.0 && v.trend > 0.0 && v.seasonal > 0.0)) {
    raise(ErrorKind::kInvalidArgument, "structural noise variances must be positive");
  }
}

LikelihoodTerms StructuralKalman::likelihood(std::span<const double> y, std::span<const std::uint8_t> present,
                                             const FilterInit& init) const {
  check_inputs(model_, y, present, init);
  RingFilter filter(model_, init);
  LikelihoodTerms terms;
  std::size_t observed = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (present[t] != 0) {
      double v = 0.0;
      double f = 0.0;
      filter.update(y[t], v, f);
      if (observed++ >= init.burn_in) {
        terms.sum_log_f += std::log(f);
        terms.sum_scaled_sq += v * v / f;
        ++terms.count;
      }
    }
    if (t + 1 < y.size()) filter.predict();
  }
  return terms;
}

SmoothResult StructuralKalman::smooth(std::span<const double> y, std::span<const std::uint8_t> present,
                                      const FilterInit& init, const SmoothOptions& options) const {
  check_inputs(model_, y, present, init);
  const std::size_t n = y.size();
  const std::size_t from = std::min(options.smooth_from, n - 1);

  SmoothResult out;
  out.filtered_signal.resize(n);
  out.smoothed_signal.resize(n);
  out.smoothed_state.resize(n);
  if (options.keep_covariances) {
    out.predicted_cov.resize(n);
    out.filtered_cov.resize(n);
    out.smoothed_cov.resize(n);
  }

  std::vector<VectorXd> filt_mean(n), pred_mean(n);
  std::vector<MatrixXd> filt_cov(n), pred_cov(n);
  std::vector<Index> heads(n);

  RingFilter filter(model_, init);
  std::size_t observed = 0;
  for (std::size_t t = 0; t < n; ++t) {
    heads[t] = filter.head();
    if (t >= from) {
      pred_mean[t] = filter.mean();
      pred_cov[t] = filter.full_cov();
      if (options.keep_covariances) out.predicted_cov[t] = to_logical(pred_cov[t], heads[t]);
    }
    if (present[t] != 0) {
      double v = 0.0;
      double f = 0.0;
      filter.update(y[t], v, f);
      if (observed++ >= init.burn_in) {
        out.terms.sum_log_f += std::log(f);
        out.terms.sum_scaled_sq += v * v / f;
        ++out.terms.count;
      }
    }
    out.filtered_signal[t] = filter.signal();
    out.smoothed_signal[t] = filter.signal();
    if (t >= from) {
      filt_mean[t] = filter.mean();
      filt_cov[t] = filter.full_cov();
      if (options.keep_covariances) out.filtered_cov[t] = to_logical(filt_cov[t], heads[t]);
    }
    out.smoothed_state[t] = to_logical(filter.mean(), heads[t]);
    if (t + 1 < n) filter.predict();
  }

  VectorXd state = filt_mean[n - 1];
  MatrixXd state_cov = filt_cov[n - 1];
  if (options.keep_covariances) out.smoothed_cov[n - 1] = to_logical(state_cov, heads[n - 1]);
  for (std::size_t t = n - 1; t-- > from;) {
    const Index z = 2 + heads[t + 1];
    const Eigen::LDLT<MatrixXd> ldlt(pred_cov[t + 1]);
    if (ldlt.info() != Eigen::Success) raise(ErrorKind::kNumericalFailure, "predicted covariance is not factorisable");
    const VectorXd correction = ldlt.solve(state - pred_mean[t + 1]);
    VectorXd next = filt_mean[t] + filt_cov[t] * transition_transpose_apply(correction, z);
    if (options.keep_covariances) {
      const MatrixXd gain_t = ldlt.solve(transition_rows_apply(filt_cov[t], z));  // J'
      MatrixXd cov = filt_cov[t] + gain_t.transpose() * (state_cov - pred_cov[t + 1]) * gain_t;
      cov = 0.5 * (cov + cov.transpose()).eval();
      out.smoothed_cov[t] = to_logical(cov, heads[t]);
      state_cov = std::move(cov);
    }
    state = std::move(next);
    out.smoothed_signal[t] = state(0) + state(2 + heads[t]);
    out.smoothed_state[t] = to_logical(state, heads[t]);
  }
  return out;
}

Eigen::VectorXd structural_initial_state(std::span<const double> y, std::span<const std::uint8_t> present,
                                         std::size_t season_length) {
  const std::size_t m = season_length;
  VectorXd state = VectorXd::Zero(static_cast<Index>(m + 1));
  const bool head_clean =
      y.size() >= 2 * m && std::all_of(present.begin(), present.begin() + static_cast<std::ptrdiff_t>(2 * m),
                                       [](std::uint8_t p) { return p != 0; });
  if (!head_clean) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (present[i] != 0) {
        sum += y[i];
        ++count;
      }
    }
    state(0) = count > 0 ? sum / static_cast<double>(count) : 0.0;
    return state;
  }

  double mean1 = 0.0;
  double mean2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean1 += y[i];
    mean2 += y[m + i];
  }
  mean1 /= static_cast<double>(m);
  mean2 /= static_cast<double>(m);
  const double slope = (mean2 - mean1) / static_cast<double>(m);
  const double center = (static_cast<double>(m) - 1.0) / 2.0;
  const auto line = [&](double t) { return mean1 + slope * (t - center); };

  std::vector<double> profile(m);
  double profile_mean = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    profile[j] = 0.5 * ((y[j] - line(static_cast<double>(j))) + (y[m + j] - line(static_cast<double>(m + j))));
    profile_mean += profile[j];
  }
  profile_mean /= static_cast<double>(m);

  state(0) = line(0.0);
  state(1) = slope;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    state(static_cast<Index>(2 + k)) = profile[(m - k) % m] - profile_mean;
  }
  return state;
}

StructuralFit estimate_structural_noise(std::span<const double> y, std::span<const std::uint8_t> present,
                                        std::size_t season_length, const NoiseGrid& grid) {
  if (grid.points < 2) raise(ErrorKind::kInvalidArgument, "noise grid needs at least 2 points per axis");
  FilterInit init;
  init.mean = structural_initial_state(y, present, season_length);
  init.burn_in = season_length + 1;

  StructuralFit best;
  best.log_likelihood = -std::numeric_limits<double>::infinity();
  double best_sigma2 = 0.0;
  std::array<double, 3> best_log{};
  bool found = false;

  const auto evaluate = [&](const std::array<double, 3>& log_ratio) {
    StructuralStateSpace model{season_length,
                               {1.0, std::pow(10.0, log_ratio[0]), std::pow(10.0, log_ratio[1]),
                                std::pow(10.0, log_ratio[2])}};
    const auto terms = StructuralKalman(model).likelihood(y, present, init);
    ++best.evaluations;
    const double ll = terms.count > 0 ? terms.profile_log_likelihood() : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(ll) && ll > best.log_likelihood) {
      best.log_likelihood = ll;
      best.variances = model.variances;
      best_sigma2 = terms.profile_sigma2();
      best_log = log_ratio;
      found = true;
    }
  };

  const std::array<double, 3> lo{grid.level_lo, grid.trend_lo, grid.seasonal_lo};
  const std::array<double, 3> hi{grid.level_hi, grid.trend_hi, grid.seasonal_hi};
  std::array<double, 3> step{};
  for (std::size_t k = 0; k < 3; ++k) step[k] = (hi[k] - lo[k]) / static_cast<double>(grid.points - 1);

  const auto sweep = [&](const std::array<double, 3>& origin, const std::array<double, 3>& spacing,
                         std::size_t points, const std::array<double, 3>* skip) {
    for (std::size_t i = 0; i < points; ++i) {
      for (std::size_t j = 0; j < points; ++j) {
        for (std::size_t k = 0; k < points; ++k) {
          const std::array<double, 3> node{origin[0] + static_cast<double>(i) * spacing[0],
                                           origin[1] + static_cast<double>(j) * spacing[1],
                                           origin[2] + static_cast<double>(k) * spacing[2]};
          if (skip && node == *skip) continue;
          evaluate(node);
        }
      }
    }
  };

  sweep(lo, step, grid.points, nullptr);
  if (!found) raise(ErrorKind::kNumericalFailure, "structural likelihood is non-finite at every grid point");

  const std::array<double, 3> center = best_log;
  std::array<double, 3> half{};
  std::array<double, 3> origin{};
  const double offset = static_cast<double>(grid.refine_points > 0 ? grid.refine_points - 1 : 0) / 2.0;
  for (std::size_t k = 0; k < 3; ++k) {
    half[k] = step[k] / 2.0;
    origin[k] = center[k] - offset * half[k];
  }
  if (grid.refine_points > 0) sweep(origin, half, grid.refine_points, &center);

  best.variances.observation = best_sigma2;
  best.variances.level *= best_sigma2;
  best.variances.trend *= best_sigma2;
  best.variances.seasonal *= best_sigma2;
  return best;
}

namespace {

struct Stretch {
  std::size_t begin;
  std::vector<double> y;
  std::vector<std::uint8_t> present;
};

Stretch gap_stretch(const MeterSeries& series, const Gap& gap, std::size_t season_length, std::size_t context_len) {
  gap.check_within(series.size());
  Stretch s;
  s.begin = gap.start() - std::min(gap.start(), context_len);
  const std::size_t end = std::min(series.size(), gap.end() + context_len);
  s.y.assign(series.values().begin() + static_cast<std::ptrdiff_t>(s.begin),
             series.values().begin() + static_cast<std::ptrdiff_t>(end));
  s.present.assign(series.present_mask().begin() + static_cast<std::ptrdiff_t>(s.begin),
                   series.present_mask().begin() + static_cast<std::ptrdiff_t>(end));
  for (std::size_t i = gap.start(); i < gap.end(); ++i) s.present[i - s.begin] = 0;
  const auto observed = static_cast<std::size_t>(std::count(s.present.begin(), s.present.end(), std::uint8_t{1}));
  if (observed < 2 * season_length) {
    raise(ErrorKind::kInsufficientContext, "Kalman smoothing needs " + std::to_string(2 * season_length) +
                                               " observations around the gap, found " + std::to_string(observed));
  }
  return s;
}

}  // namespace

std::vector<double> kalman_smooth_impute(const MeterSeries& series, const Gap& gap, std::size_t season_length,
                                         std::size_t context_len) {
  const Stretch s = gap_stretch(series, gap, season_length, context_len);
  const StructuralFit fit = estimate_structural_noise(s.y, s.present, season_length);

  // Smoothed means depend only on the variance ratios.
  const auto& v = fit.variances;
  StructuralStateSpace model{season_length,
                             {1.0, v.level / v.observation, v.trend / v.observation, v.seasonal / v.observation}};
  FilterInit init;
  init.mean = structural_initial_state(s.y, s.present, season_length);
  init.burn_in = season_length + 1;
  SmoothOptions options;
  options.smooth_from = gap.start() - s.begin;
  const auto result = StructuralKalman(model).smooth(s.y, s.present, init, options);

  std::vector<double> out(gap.length());
  for (std::size_t i = 0; i < gap.length(); ++i) out[i] = result.smoothed_signal[gap.start() - s.begin + i];
  return out;
}

KalmanSmoothingImputer::KalmanSmoothingImputer(std::size_t season_length, std::size_t context_len)
    : season_length_(season_length), context_len_(context_len) {
  if (season_length_ < 3) raise(ErrorKind::kInvalidArgument, "Kalman season length must be at least 3");
  if (context_len_ == 0) raise(ErrorKind::kInvalidArgument, "Kalman context length must be positive");
}

std::vector<double> KalmanSmoothingImputer::impute(const MeterSeries& series, const Gap& gap) const {
  return kalman_smooth_impute(series, gap, season_length_, context_len_);
}

FitDiagnostics KalmanSmoothingImputer::diagnostics(const MeterSeries& series, const Gap& gap) const {
  const Stretch s = gap_stretch(series, gap, season_length_, context_len_);
  const auto fit = estimate_structural_noise(s.y, s.present, season_length_);
  return {{"var_observation", fit.variances.observation},
          {"var_level", fit.variances.level},
          {"var_trend", fit.variances.trend},
          {"var_seasonal", fit.variances.seasonal},
          {"log_likelihood", fit.log_likelihood}};
}

}  // namespace gapfill
