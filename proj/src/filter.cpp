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

#include "uavtrack/filter.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

namespace
{

void symmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

// Symmetrizes m and, if it is not positive semidefinite, clips negative
// eigenvalues to zero. The large negative centre weight of a small-alpha
// transform can push a nonlinear prediction slightly indefinite.
void make_psd(Eigen::MatrixXd& m)
{
  symmetrize(m);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success)
  {
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success)
  {
    throw NumericalError("covariance eigendecomposition failed");
  }
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  m = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  symmetrize(m);
}

Eigen::VectorXd normalized_mean(const Eigen::VectorXd& mean, ModelKind model)
{
  UavState s = normalize(from_vector(mean, model));
  if (s.v < 0.0)
  {
    s.v = 0.0;
  }
  return to_vector(s, model);
}

// Lower-triangular-like factor L with L L^T = m. Falls back to an
// eigendecomposition for semidefinite input (e.g. an all-zero matrix).
Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& m)
{
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success)
  {
    return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success)
  {
    throw NumericalError("covariance eigendecomposition failed");
  }
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-9 * scale)
  {
    throw NumericalError("covariance is not positive semidefinite (min eigenvalue " +
                         std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

Eigen::MatrixXd weighted_cov(const Eigen::MatrixXd& points, const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& weights)
{
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < points.cols(); ++i)
  {
    const Eigen::VectorXd r = state_residual(points.col(i), mean);
    cov.noalias() += weights(i) * r * r.transpose();
  }
  return cov;
}

}  // namespace

double MeasurementVariances::operator[](int component) const
{
  switch (component)
  {
    case kX: return x;
    case kY: return y;
    case kZ: return z;
    case kTheta: return theta;
    case kPhi: return phi;
    case kV: return v;
    case kA: return a;
    case kOmega: return omega;
    case kPsi: return psi;
    default: throw RangeError("measurement component index out of range");
  }
}

Eigen::VectorXd NoiseConfig::r_diag(ModelKind model) const
{
  const int n = state_dim(model);
  Eigen::VectorXd diag(n);
  for (int i = 0; i < n; ++i)
  {
    diag(i) = r[i];
  }
  return diag;
}

void NoiseConfig::validate() const
{
  if (!(q >= 0.0) || !std::isfinite(q))
  {
    throw ConfigError("process noise q must be finite and >= 0");
  }
  for (int i = 0; i < kComponentCount; ++i)
  {
    if (!(r[i] >= 0.0) || !std::isfinite(r[i]))
    {
      throw ConfigError("measurement variances must be finite and >= 0");
    }
  }
}

void UkfParams::validate() const
{
  if (!(alpha > 0.0 && alpha <= 1.0))
  {
    throw ConfigError("UKF alpha must be in (0, 1]");
  }
  if (!std::isfinite(beta) || !std::isfinite(kappa))
  {
    throw ConfigError("UKF beta and kappa must be finite");
  }
}

Eigen::VectorXd state_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  Eigen::VectorXd r = a - b;
  for (int i = 0; i < r.size(); ++i)
  {
    if (is_angle_component(i))
    {
      r(i) = wrap_angle(r(i));
    }
  }
  return r;
}

Eigen::VectorXd weighted_mean(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights)
{
  const Eigen::VectorXd reference = points.col(0);
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(points.rows());
  for (int i = 0; i < points.cols(); ++i)
  {
    offset += weights(i) * state_residual(points.col(i), reference);
  }
  // Weights sum to one, so the reference cancels except on the angles.
  return reference + offset;
}

SigmaPoints sigma_points(const GaussianBelief& belief, const UkfParams& params)
{
  const int n = belief.dim();
  const double nd = static_cast<double>(n);
  const double lambda = params.alpha * params.alpha * (nd + params.kappa) - nd;
  const double spread = nd + lambda;

  SigmaPoints sp;
  sp.mean_weights = Eigen::VectorXd::Constant(2 * n + 1, 1.0 / (2.0 * spread));
  sp.mean_weights(0) = lambda / spread;
  sp.cov_weights = sp.mean_weights;
  sp.cov_weights(0) += 1.0 - params.alpha * params.alpha + params.beta;

  const Eigen::MatrixXd root = matrix_sqrt(spread * belief.cov);
  sp.points.resize(n, 2 * n + 1);
  sp.points.col(0) = belief.mean;
  for (int i = 0; i < n; ++i)
  {
    sp.points.col(1 + i) = belief.mean + root.col(i);
    sp.points.col(1 + n + i) = belief.mean - root.col(i);
  }
  return sp;
}

GaussianBelief predict(const GaussianBelief& belief, double dt, const NoiseConfig& noise, const UkfParams& params)
{
  SigmaPoints sp = sigma_points(belief, params);
  for (int i = 0; i < sp.points.cols(); ++i)
  {
    const UavState propagated = propagate(belief.model, from_vector(sp.points.col(i), belief.model), dt);
    sp.points.col(i) = to_vector(propagated, belief.model);
  }

  GaussianBelief out;
  out.model = belief.model;
  out.mean = weighted_mean(sp.points, sp.mean_weights);
  out.cov = weighted_cov(sp.points, out.mean, sp.cov_weights);
  const double q = noise.scale_q_by_dt ? noise.q * dt : noise.q;
  out.cov.diagonal().array() += q;
  make_psd(out.cov);
  out.mean = normalized_mean(out.mean, out.model);
  return out;
}

GaussianBelief update(const GaussianBelief& belief, const UavState& measurement, const NoiseConfig& noise,
                      const UkfParams& params)
{
  const SigmaPoints sp = sigma_points(belief, params);
  // Identity observation: the measurement sigma points are the state points.
  const Eigen::MatrixXd& obs = sp.points;
  const Eigen::VectorXd predicted_obs = weighted_mean(obs, sp.mean_weights);

  const int n = belief.dim();
  Eigen::MatrixXd innovation_cov = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd cross_cov = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < obs.cols(); ++i)
  {
    const Eigen::VectorXd dz = state_residual(obs.col(i), predicted_obs);
    const Eigen::VectorXd dx = state_residual(sp.points.col(i), belief.mean);
    innovation_cov.noalias() += sp.cov_weights(i) * dz * dz.transpose();
    cross_cov.noalias() += sp.cov_weights(i) * dx * dz.transpose();
  }
  innovation_cov.diagonal() += noise.r_diag(belief.model);
  symmetrize(innovation_cov);

  Eigen::LLT<Eigen::MatrixXd> llt(innovation_cov);
  if (llt.info() != Eigen::Success)
  {
    throw NumericalError("innovation covariance is not invertible");
  }
  // K = Pxz S^-1, solved as S K^T = Pxz^T.
  const Eigen::MatrixXd gain = llt.solve(cross_cov.transpose()).transpose();
  const Eigen::VectorXd innovation = state_residual(to_vector(measurement, belief.model), predicted_obs);

  GaussianBelief out;
  out.model = belief.model;
  out.mean = normalized_mean(belief.mean + gain * innovation, belief.model);
  out.cov = belief.cov - gain * innovation_cov * gain.transpose();
  make_psd(out.cov);
  return out;
}

GaussianBelief reset_from_report(const UavState& decoded, ModelKind model, const NoiseConfig& noise)
{
  GaussianBelief out;
  out.model = model;
  out.mean = to_vector(decoded, model);
  out.cov = noise.r_diag(model).asDiagonal();
  return out;
}

GaussianBelief apply_tilt_decay(const GaussianBelief& belief, double eta)
{
  if (belief.model != ModelKind::Ctra3D)
  {
    return belief;
  }
  GaussianBelief out = belief;
  out.mean(kPsi) *= eta;
  out.cov.row(kPsi) *= eta;
  out.cov.col(kPsi) *= eta;
  return out;
}

}  // namespace uavtrack
