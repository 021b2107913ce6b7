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

#include <array>
#include <numbers>
#include <string_view>

#include <Eigen/Core>

namespace uavtrack
{

inline constexpr double kPi = std::numbers::pi;

enum class ModelKind
{
  DR,
  CtraPlus,
  Ctra3D,
};

// Index of each kinematic component in the full 9-element state vector.
// Model-specific vectors are prefixes of this ordering.
enum Component : int
{
  kX = 0,
  kY,
  kZ,
  kTheta,
  kPhi,
  kV,
  kA,
  kOmega,
  kPsi,
  kComponentCount,
};

/// Full kinematic state of the vehicle.
///
/// theta is the yaw in [-pi, pi), phi the pitch in [-pi/2, pi/2]; v is the
/// speed magnitude, a the tangential acceleration, omega the yaw rate and psi
/// the pitch (tilt) rate. DR only uses x..v; CTRA+ ignores psi.
struct UavState
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double v = 0.0;
  double a = 0.0;
  double omega = 0.0;
  double psi = 0.0;

  [[nodiscard]] Eigen::Vector3d position() const { return {x, y, z}; }
  [[nodiscard]] double& operator[](int component);
  [[nodiscard]] double operator[](int component) const;

  friend bool operator==(const UavState&, const UavState&) = default;
};

/// Number of state components tracked by a model (6, 8 or 9).
[[nodiscard]] constexpr int state_dim(ModelKind model)
{
  switch (model)
  {
    case ModelKind::DR:
      return 6;
    case ModelKind::CtraPlus:
      return 8;
    case ModelKind::Ctra3D:
      return 9;
  }
  return 9;
}

[[nodiscard]] constexpr bool is_angle_component(int component)
{
  return component == kTheta || component == kPhi;
}

/// Wraps an angle into [-pi, pi).
[[nodiscard]] double wrap_angle(double angle);

/// Brings theta into [-pi, pi) and phi into [-pi/2, pi/2]. A pitch beyond a
/// pole is reflected back over it; the heading then flips by pi and the tilt
/// rate changes sign so the direction of motion and its evolution are kept.
[[nodiscard]] UavState normalize(UavState s);

[[nodiscard]] Eigen::VectorXd to_vector(const UavState& s, ModelKind model);

/// Components beyond the model dimension are zero.
[[nodiscard]] UavState from_vector(const Eigen::Ref<const Eigen::VectorXd>& vec, ModelKind model);

/// Zeroes the components a model does not track.
[[nodiscard]] UavState project(const UavState& s, ModelKind model);

[[nodiscard]] std::string_view model_name(ModelKind model);

/// Accepts "DR", "CTRA+", "3D-CTRA" (case-insensitive, also "ctra_plus",
/// "ctra_3d"). Throws ConfigError for anything else.
[[nodiscard]] ModelKind parse_model(std::string_view name);

}  // namespace uavtrack
