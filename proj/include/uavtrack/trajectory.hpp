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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "uavtrack/filter.hpp"
#include "uavtrack/state.hpp"

namespace uavtrack
{

struct TrajectorySample
{
  double t = 0.0;
  Eigen::Vector3d position{0.0, 0.0, 0.0};
  Eigen::Vector3d velocity{0.0, 0.0, 0.0};
  std::optional<Eigen::Vector3d> acceleration;
};

/// Time-ordered ground truth. `derived` is filled by derive_kinematics() and
/// is either empty or parallel to `samples`.
struct TrajectoryTrace
{
  std::vector<TrajectorySample> samples;
  std::vector<UavState> derived;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] bool empty() const { return samples.empty(); }
  [[nodiscard]] double start_time() const { return samples.front().t; }
  [[nodiscard]] double end_time() const { return samples.back().t; }
  [[nodiscard]] double duration() const { return empty() ? 0.0 : end_time() - start_time(); }
  [[nodiscard]] double sample_rate() const;
  /// Same trace shifted in space by `offset`.
  [[nodiscard]] TrajectoryTrace translated(const Eigen::Vector3d& offset) const;
};

/// Speeds below this (m/s) do not define a heading.
inline constexpr double kHeadingSpeedEps = 1e-3;

/// CSV with header `t,x,y,z,vx,vy,vz[,ax,ay,az]`. Throws ParseError with the
/// offending line number.
[[nodiscard]] TrajectoryTrace parse_trace(std::istream& input);
[[nodiscard]] TrajectoryTrace load_trace(const std::filesystem::path& path);
void write_trace_csv(std::ostream& out, const TrajectoryTrace& trace);

/// Fills `derived`: speed, heading and pitch from the velocity vector;
/// tangential acceleration and angular rates by central differences
/// (one-sided at the ends) of the speed and unwrapped angles.
[[nodiscard]] TrajectoryTrace derive_kinematics(TrajectoryTrace trace);

/// Linear interpolation inside the span; angles along the shortest arc.
/// Requires derived kinematics. Throws RangeError outside the span.
[[nodiscard]] UavState state_at(const TrajectoryTrace& trace, double t);

/// Truth plus independent zero-mean Gaussian noise with variances from
/// noise.r, drawn in component order x, y, z, theta, phi, v, a, omega, psi.
[[nodiscard]] UavState synthesize_measurement(const UavState& truth, const NoiseConfig& noise, std::mt19937_64& rng);

}  // namespace uavtrack
