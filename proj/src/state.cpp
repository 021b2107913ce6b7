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

#include "uavtrack/state.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

double& UavState::operator[](int component)
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
    default: throw RangeError("state component index out of range");
  }
}

double UavState::operator[](int component) const
{
  return const_cast<UavState&>(*this)[component];
}

double wrap_angle(double angle)
{
  if (angle >= -kPi && angle < kPi)
  {
    return angle;
  }
  double wrapped = angle - 2.0 * kPi * std::floor((angle + kPi) / (2.0 * kPi));
  // floor() rounding can land exactly on +pi
  if (wrapped >= kPi)
  {
    wrapped -= 2.0 * kPi;
  }
  if (wrapped < -kPi)
  {
    wrapped = -kPi;
  }
  return wrapped;
}

UavState normalize(UavState s)
{
  double phi = wrap_angle(s.phi);
  if (phi > kPi / 2.0)
  {
    phi = kPi - phi;
    s.theta += kPi;
    s.psi = -s.psi;
  }
  else if (phi < -kPi / 2.0)
  {
    phi = -kPi - phi;
    s.theta += kPi;
    s.psi = -s.psi;
  }
  s.phi = phi;
  s.theta = wrap_angle(s.theta);
  return s;
}

Eigen::VectorXd to_vector(const UavState& s, ModelKind model)
{
  const int n = state_dim(model);
  Eigen::VectorXd vec(n);
  for (int i = 0; i < n; ++i)
  {
    vec(i) = s[i];
  }
  return vec;
}

UavState from_vector(const Eigen::Ref<const Eigen::VectorXd>& vec, ModelKind model)
{
  const int n = state_dim(model);
  if (vec.size() != n)
  {
    throw RangeError("state vector has " + std::to_string(vec.size()) + " components, expected " +
                     std::to_string(n));
  }
  UavState s;
  for (int i = 0; i < n; ++i)
  {
    s[i] = vec(i);
  }
  return s;
}

UavState project(const UavState& s, ModelKind model)
{
  UavState out;
  for (int i = 0; i < state_dim(model); ++i)
  {
    out[i] = s[i];
  }
  return out;
}

std::string_view model_name(ModelKind model)
{
  switch (model)
  {
    case ModelKind::DR:
      return "DR";
    case ModelKind::CtraPlus:
      return "CTRA+";
    case ModelKind::Ctra3D:
      return "3D-CTRA";
  }
  return "?";
}

ModelKind parse_model(std::string_view name)
{
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dr")
  {
    return ModelKind::DR;
  }
  if (lower == "ctra+" || lower == "ctra_plus" || lower == "ctraplus")
  {
    return ModelKind::CtraPlus;
  }
  if (lower == "3d-ctra" || lower == "ctra_3d" || lower == "3dctra" || lower == "3d_ctra")
  {
    return ModelKind::Ctra3D;
  }
  throw ConfigError("unknown motion model '" + std::string(name) + "'");
}

}  // namespace uavtrack
