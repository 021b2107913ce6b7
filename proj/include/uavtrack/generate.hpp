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

#include <string_view>

#include <Eigen/Core>

#include "uavtrack/trajectory.hpp"

namespace uavtrack
{

enum class TraceKind
{
  Line,
  Circle,
  Helix,
  CurvedHelix,
};

[[nodiscard]] TraceKind parse_trace_kind(std::string_view name);
[[nodiscard]] std::string_view trace_kind_name(TraceKind kind);

/// Parameters for the analytic trajectory generators. Fields a generator
/// does not use are ignored.
struct GeneratorParams
{
  double rate_hz = 100.0;
  double duration_s = 30.0;
  Eigen::Vector3d origin{0.0, 0.0, 0.0};
  double speed = 5.0;        // total speed, m/s
  double accel = 0.0;        // line only, m/s^2
  double heading = 0.0;      // initial yaw, rad
  double pitch = 0.0;        // line and curved helix: initial pitch, rad
  double radius = 10.0;      // circle and helix, m
  double climb_rate = 0.0;   // helix, m/s
  double omega = 0.3;        // curved helix yaw rate, rad/s
  double psi = 0.1;          // curved helix tilt rate magnitude, rad/s
  double max_pitch = 0.35;   // curved helix pitch bound, rad

  void validate(TraceKind kind) const;
};

/// Samples at t = k / rate_hz for k = 0 .. round(duration * rate_hz).
///
/// line: constant heading and pitch, optional tangential acceleration.
/// circle: horizontal circle of `radius` at constant speed.
/// helix: circle of `radius` climbing at `climb_rate` (constant pitch).
/// curved-helix: constant yaw rate `omega`; the pitch sweeps between
///   +/- max_pitch at rate `psi`, reversing at the bounds.
/// Includes derived kinematics.
[[nodiscard]] TrajectoryTrace generate_trace(TraceKind kind, const GeneratorParams& params);

}  // namespace uavtrack
