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

#include "uavtrack/state.hpp"

namespace uavtrack
{

/// Rates below this magnitude (rad/s) are treated as exactly zero when
/// choosing a closed form.
inline constexpr double kDefaultRateEps = 1e-6;

enum class RegimeClass
{
  Generic,
  PsiZero,
  OmegaEqPsi,
  OmegaEqNegPsi,
  BothZero,
};

struct Velocity
{
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;
};

[[nodiscard]] Velocity velocity_components(const UavState& s);

/// Precedence: BothZero, PsiZero, OmegaEqPsi, OmegaEqNegPsi, Generic.
[[nodiscard]] RegimeClass classify_regime(double omega, double psi, double eps_rate = kDefaultRateEps);

/// Straight line at constant speed, heading and pitch. a, omega and psi are
/// carried through untouched.
[[nodiscard]] UavState propagate_dr(const UavState& s, double dt);

/// Constant yaw rate and tangential acceleration on a plane tilted by the
/// (constant) pitch. psi is carried through untouched.
[[nodiscard]] UavState propagate_ctra_plus(const UavState& s, double dt, double eps_rate = kDefaultRateEps);

/// Constant yaw rate, tilt rate and tangential acceleration (curved helix).
[[nodiscard]] UavState propagate_3dctra(const UavState& s, double dt, double eps_rate = kDefaultRateEps);

[[nodiscard]] UavState propagate(ModelKind model, const UavState& s, double dt,
                                 double eps_rate = kDefaultRateEps);

/// Scales psi by eta; everything else is unchanged.
[[nodiscard]] UavState apply_tilt_decay(const UavState& s, double eta);

}  // namespace uavtrack
