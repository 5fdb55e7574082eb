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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gapfill/kalman.hpp"
#include "test_util.hpp"

namespace gapfill {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using testing::kind_of;

/// Textbook dense Kalman filter and RTS smoother on the logical layout.
struct DenseResult {
  LikelihoodTerms terms;
  std::vector<double> filtered_signal, smoothed_signal;
  std::vector<MatrixXd> pred_cov, filt_cov, smooth_cov;
};

DenseResult dense_smooth(const StructuralStateSpace& model, const std::vector<double>& y,
                         const std::vector<std::uint8_t>& present, const FilterInit& init) {
  const auto n = y.size();
  const auto k = static_cast<Eigen::Index>(model.state_dim());
  const MatrixXd T = model.transition();
  const VectorXd Z = model.observation_vector();
  const MatrixXd Q = model.process_noise();
  const double H = model.variances.observation;

  DenseResult r;
  std::vector<VectorXd> a_pred(n), a_filt(n);
  r.pred_cov.resize(n);
  r.filt_cov.resize(n);
  VectorXd a = init.mean;
  MatrixXd P = init.prior_variance * MatrixXd::Identity(k, k);
  std::size_t observed = 0;
  for (std::size_t t = 0; t < n; ++t) {
    a_pred[t] = a;
    r.pred_cov[t] = P;
    if (present[t]) {
      const double v = y[t] - Z.dot(a);
      const double F = Z.dot(P * Z) + H;
      const VectorXd K = P * Z / F;
      a = a + K * v;
      P = P - K * Z.transpose() * P;
      if (observed++ >= init.burn_in) {
        r.terms.sum_log_f += std::log(F);
        r.terms.sum_scaled_sq += v * v / F;
        ++r.terms.count;
      }
    }
    a_filt[t] = a;
    r.filt_cov[t] = P;
    r.filtered_signal.push_back(Z.dot(a));
    a = T * a;
    P = T * P * T.transpose() + Q;
  }
  r.smoothed_signal.assign(n, 0.0);
  r.smooth_cov.resize(n);
  VectorXd as = a_filt[n - 1];
  MatrixXd Ps = r.filt_cov[n - 1];
  r.smoothed_signal[n - 1] = Z.dot(as);
  r.smooth_cov[n - 1] = Ps;
  for (std::size_t t = n - 1; t-- > 0;) {
    const MatrixXd J = r.filt_cov[t] * T.transpose() * r.pred_cov[t + 1].inverse();
    as = a_filt[t] + J * (as - a_pred[t + 1]);
    Ps = r.filt_cov[t] + J * (Ps - r.pred_cov[t + 1]) * J.transpose();
    r.smoothed_signal[t] = Z.dot(as);
    r.smooth_cov[t] = Ps;
  }
  return r;
}

StructuralStateSpace small_model() {
  StructuralStateSpace m;
  m.season_length = 4;
  m.variances = {0.5, 0.1, 0.01, 0.05};
  return m;
}

TEST(StructuralModel, Matrices) {
  const auto m = small_model();
  const MatrixXd T = m.transition();
  ASSERT_EQ(T.rows(), 5);
  EXPECT_EQ(T(0, 0), 1.0);
  EXPECT_EQ(T(0, 1), 1.0);
  EXPECT_EQ(T(1, 1), 1.0);
  EXPECT_EQ(T(2, 2), -1.0);
  EXPECT_EQ(T(2, 4), -1.0);
  EXPECT_EQ(T(3, 2), 1.0);
  EXPECT_EQ(T(4, 3), 1.0);
  const VectorXd Z = m.observation_vector();
  EXPECT_EQ(Z, (VectorXd(5) << 1, 0, 1, 0, 0).finished());
  const MatrixXd Q = m.process_noise();
  EXPECT_EQ(Q(0, 0), 0.1);
  EXPECT_EQ(Q(1, 1), 0.01);
  EXPECT_EQ(Q(2, 2), 0.05);
  EXPECT_EQ(Q(3, 3), 0.0);
}

class KalmanOracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(KalmanOracle, MatchesDenseFilterAndSmoother) {
  const auto model = small_model();
  const std::size_t n = 40;
  auto y = testing::noisy_load(n, GetParam(), 0.2);
  std::vector<std::uint8_t> present(n, 1);
  RandomStream rng(derive_key(GetParam(), "holes"));
  for (std::size_t i = 0; i < 6; ++i) present[3 + rng.below(n - 3)] = 0;
  FilterInit init;
  init.mean = VectorXd::Zero(5);
  init.mean(0) = 0.5;
  init.mean(2) = 0.1;
  init.prior_variance = 50.0;
  init.burn_in = 2;

  const StructuralKalman kf(model);
  SmoothOptions opts;
  opts.keep_covariances = true;
  const auto got = kf.smooth(y, present, init, opts);
  const auto want = dense_smooth(model, y, present, init);

  EXPECT_EQ(got.terms.count, want.terms.count);
  EXPECT_NEAR(got.terms.sum_log_f, want.terms.sum_log_f, 1e-8);
  EXPECT_NEAR(got.terms.sum_scaled_sq, want.terms.sum_scaled_sq, 1e-8);
  const auto lik = kf.likelihood(y, present, init);
  EXPECT_NEAR(lik.sum_log_f, want.terms.sum_log_f, 1e-8);
  EXPECT_NEAR(lik.sum_scaled_sq, want.terms.sum_scaled_sq, 1e-8);

  for (std::size_t t = 0; t < n; ++t) {
    EXPECT_NEAR(got.filtered_signal[t], want.filtered_signal[t], 1e-7) << t;
    EXPECT_NEAR(got.smoothed_signal[t], want.smoothed_signal[t], 1e-6) << t;
    EXPECT_LT((got.predicted_cov[t] - want.pred_cov[t]).cwiseAbs().maxCoeff(), 1e-6 * init.prior_variance) << t;
    EXPECT_LT((got.filtered_cov[t] - want.filt_cov[t]).cwiseAbs().maxCoeff(), 1e-6 * init.prior_variance) << t;
  }
}

TEST_P(KalmanOracle, CovariancesPsdAndSmoothingShrinksVariance) {
  const auto model = small_model();
  const std::size_t n = 60;
  const auto y = testing::noisy_load(n, GetParam(), 0.1);
  std::vector<std::uint8_t> present(n, 1);
  for (std::size_t i = 20; i < 27; ++i) present[i] = 0;
  FilterInit init;
  init.mean = VectorXd::Zero(5);
  init.prior_variance = 1e3;
  SmoothOptions opts;
  opts.keep_covariances = true;
  const auto r = StructuralKalman(model).smooth(y, present, init, opts);
  for (std::size_t t = 0; t < n; ++t) {
    for (const MatrixXd* p : {&r.predicted_cov[t], &r.filtered_cov[t], &r.smoothed_cov[t]}) {
      EXPECT_LT((*p - p->transpose()).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + p->trace()));
      const double min_eig = Eigen::SelfAdjointEigenSolver<MatrixXd>(*p).eigenvalues().minCoeff();
      EXPECT_GE(min_eig, -1e-8 * p->trace()) << t;
    }
    for (Eigen::Index i = 0; i < 5; ++i) {
      EXPECT_LE(r.smoothed_cov[t](i, i), r.filtered_cov[t](i, i) + 1e-9 * (1.0 + r.filtered_cov[t](i, i))) << t;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, KalmanOracle, ::testing::Range<std::uint64_t>(0, 8));

TEST(KalmanImpute, LinearRampRecovered) {
  std::vector<double> v(400);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i);
  const Gap gap(200, 20);
  const auto s = testing::masked_series(v, gap);
  const auto out = kalman_smooth_impute(s, gap, 48, 150);
  ASSERT_EQ(out.size(), 20u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], v[200 + i], 1e-6);
}

TEST(KalmanImpute, ConstantSeries) {
  const Gap gap(350, 30);
  const auto s = testing::masked_series(std::vector<double>(800, 0.37), gap);
  for (double x : KalmanSmoothingImputer().impute(s, gap)) EXPECT_NEAR(x, 0.37, 1e-9);
}

TEST(KalmanImpute, SeasonalRecovered) {
  constexpr std::size_t m = 24;
  std::vector<double> v(m * 20);
  for (std::size_t t = 0; t < v.size(); ++t) v[t] = 2.0 + std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / m);
  const Gap gap(m * 10 + 3, m);
  const auto s = testing::masked_series(v, gap);
  const auto out = kalman_smooth_impute(s, gap, m, m * 6);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_NEAR(out[i], v[gap.start() + i], 1e-4);
}

TEST(KalmanImpute, InsufficientContext) {
  const Gap gap(20, 5);
  const auto s = testing::masked_series(std::vector<double>(60, 1.0), gap);
  EXPECT_EQ(kind_of([&] { kalman_smooth_impute(s, gap, 48, 336); }), ErrorKind::kInsufficientContext);
}

TEST(KalmanImpute, BeatsFlatOnLoad) {
  const auto v = testing::noisy_load(1200, 21);
  const Gap gap(600, 40);
  const auto s = testing::masked_series(v, gap);
  const KalmanSmoothingImputer imp;
  const auto out = imp.impute(s, gap);
  double kal = 0.0, flat = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    kal += std::abs(out[i] - v[600 + i]);
    flat += std::abs(v[599] - v[600 + i]);
  }
  EXPECT_LT(kal, flat);
  const auto d = imp.diagnostics(s, gap);
  EXPECT_FALSE(d.empty());
}

TEST(NoiseEstimation, FindsGridMaximum) {
  const auto v = testing::noisy_load(480, 2, 0.05);
  const std::vector<std::uint8_t> present(v.size(), 1);
  NoiseGrid coarse;
  coarse.refine_points = 0;
  const auto a = estimate_structural_noise(v, present, 48, coarse);
  const auto b = estimate_structural_noise(v, present, 48);
  EXPECT_EQ(a.evaluations, 125u);
  EXPECT_GT(b.evaluations, a.evaluations);
  EXPECT_GE(b.log_likelihood, a.log_likelihood - 1e-9);
  EXPECT_GT(b.variances.observation, 0.0);
  EXPECT_GT(b.variances.level, 0.0);
}

}  // namespace
}  // namespace gapfill
