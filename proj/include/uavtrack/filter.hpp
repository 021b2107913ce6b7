// Copyright 2026 The uavtrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include "uavtrack/motion.hpp"
#include "uavtrack/state.hpp"

namespace uavtrack
{

/// Per-component measurement variances (SI units squared).
struct MeasurementVariances
{
  double x = 0.8274;
  double y = 0.8274;
  double z = 3.7481;
  double v = 0.25;
  double a = 0.1521;
  double theta = 0.0085;
  double phi = 0.0085;
  double omega = 0.0003;
  double psi = 0.0003;

  [[nodiscard]] double operator[](int component) const;
};

struct NoiseConfig
{
  /// Process noise Q = q * I (times dt when scale_q_by_dt is set).
  double q = 0.1;
  MeasurementVariances r;
  bool scale_q_by_dt = true;

  /// Diagonal of R restricted to the components of `model`.
  [[nodiscard]] Eigen::VectorXd r_diag(ModelKind model) const;
  void validate() const;
};

/// Scaled unscented transform parameters.
struct UkfParams
{
  double alpha = 0.1;
  double beta = 2.0;
  double kappa = 0.0;

  void validate() const;
};

struct GaussianBelief
{
  ModelKind model = ModelKind::DR;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  [[nodiscard]] int dim() const { return static_cast<int>(mean.size()); }
  [[nodiscard]] UavState state() const { return from_vector(mean, model); }
};

struct SigmaPoints
{
  /// One point per column, 2n+1 columns. Column 0 is the mean.
  Eigen::MatrixXd points;
  Eigen::VectorXd mean_weights;
  Eigen::VectorXd cov_weights;
};

[[nodiscard]] SigmaPoints sigma_points(const GaussianBelief& belief, const UkfParams& params = {});

/// Weighted mean of the columns of `points`. Angle components are averaged
/// through residuals wrapped around the first column.
[[nodiscard]] Eigen::VectorXd weighted_mean(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights);

/// Difference `a - b` with angle components wrapped to [-pi, pi).
[[nodiscard]] Eigen::VectorXd state_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

[[nodiscard]] GaussianBelief predict(const GaussianBelief& belief, double dt, const NoiseConfig& noise,
                                     const UkfParams& params = {});

/// Identity observation of the model's components.
[[nodiscard]] GaussianBelief update(const GaussianBelief& belief, const UavState& measurement,
                                    const NoiseConfig& noise, const UkfParams& params = {});

/// Belief centred on a freshly received state with covariance diag(R).
[[nodiscard]] GaussianBelief reset_from_report(const UavState& decoded, ModelKind model, const NoiseConfig& noise);

/// Linear map psi -> eta * psi applied to mean and covariance. No-op for
/// models without psi.
[[nodiscard]] GaussianBelief apply_tilt_decay(const GaussianBelief& belief, double eta);

}  // namespace uavtrack
