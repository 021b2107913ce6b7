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

#include "uavtrack/generate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <string>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

namespace
{

struct Kinematics
{
  Eigen::Vector3d velocity;
  Eigen::Vector3d acceleration;
};

Eigen::Vector3d direction(double heading, double pitch)
{
  return {std::cos(heading) * std::cos(pitch), std::sin(heading) * std::cos(pitch), std::sin(pitch)};
}

// 6-point Gauss-Legendre rule on [a, b].
Eigen::Vector3d integrate(const std::function<Eigen::Vector3d(double)>& f, double a, double b)
{
  static constexpr std::array<double, 6> kNodes{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
                                                0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
  static constexpr std::array<double, 6> kWeights{0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
                                                  0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < kNodes.size(); ++i)
  {
    sum += kWeights[i] * f(mid + half * kNodes[i]);
  }
  return half * sum;
}

// Pitch of the curved helix: a triangle wave of amplitude `bound` in the
// unfolded coordinate u = pitch0 + psi * t. Returns pitch and dpitch/du.
std::pair<double, double> triangle(double u, double bound)
{
  const double period = 4.0 * bound;
  double w = std::fmod(u + bound, period);
  if (w < 0.0)
  {
    w += period;
  }
  if (w < 2.0 * bound)
  {
    return {w - bound, 1.0};
  }
  return {3.0 * bound - w, -1.0};
}

TrajectoryTrace sample(const GeneratorParams& p, const std::function<Eigen::Vector3d(double)>& position_of,
                       const std::function<Kinematics(double)>& kinematics_of)
{
  const auto count = static_cast<std::size_t>(std::llround(p.duration_s * p.rate_hz));
  TrajectoryTrace trace;
  trace.samples.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k)
  {
    const double t = static_cast<double>(k) / p.rate_hz;
    const Kinematics kin = kinematics_of(t);
    TrajectorySample s;
    s.t = t;
    s.position = p.origin + position_of(t);
    s.velocity = kin.velocity;
    s.acceleration = kin.acceleration;
    trace.samples.push_back(s);
  }
  return derive_kinematics(std::move(trace));
}

TrajectoryTrace line(const GeneratorParams& p)
{
  const Eigen::Vector3d dir = direction(p.heading, p.pitch);
  return sample(
      p, [&](double t) -> Eigen::Vector3d { return dir * (p.speed * t + 0.5 * p.accel * t * t); },
      [&](double t) { return Kinematics{dir * (p.speed + p.accel * t), dir * p.accel}; });
}

TrajectoryTrace helix(const GeneratorParams& p)
{
  const double horizontal = std::sqrt(p.speed * p.speed - p.climb_rate * p.climb_rate);
  const double rate = horizontal / p.radius;
  // Centre chosen so the trace starts at the origin heading along `heading`.
  const double start_angle = p.heading - kPi / 2.0;
  auto angle = [&](double t) { return start_angle + rate * t; };
  const Eigen::Vector3d start(p.radius * std::cos(start_angle), p.radius * std::sin(start_angle), 0.0);
  return sample(
      p,
      [&](double t) -> Eigen::Vector3d {
        return Eigen::Vector3d(p.radius * std::cos(angle(t)), p.radius * std::sin(angle(t)), p.climb_rate * t) - start;
      },
      [&](double t) {
        const double c = std::cos(angle(t));
        const double s = std::sin(angle(t));
        return Kinematics{Eigen::Vector3d(-horizontal * s, horizontal * c, p.climb_rate),
                          Eigen::Vector3d(-horizontal * rate * c, -horizontal * rate * s, 0.0)};
      });
}

TrajectoryTrace curved_helix(const GeneratorParams& p)
{
  const double bound = p.max_pitch;
  auto pitch_of = [&](double t) { return triangle(p.pitch + p.psi * t, bound); };
  auto velocity_of = [&](double t) -> Eigen::Vector3d {
    return p.speed * direction(p.heading + p.omega * t, pitch_of(t).first);
  };

  // Pitch reversals, where the velocity has a kink; quadrature intervals
  // are split there.
  auto kinks_between = [&](double a, double b) {
    std::vector<double> cuts;
    if (p.psi == 0.0)
    {
      return cuts;
    }
    const double ua = p.pitch + p.psi * a;
    const double ub = p.pitch + p.psi * b;
    const double lo = std::min(ua, ub);
    const double hi = std::max(ua, ub);
    // Reversals sit at u = bound + 2*m*bound.
    for (double m = std::ceil((lo - bound) / (2.0 * bound)); bound + 2.0 * m * bound < hi; m += 1.0)
    {
      const double u = bound + 2.0 * m * bound;
      if (u > lo)
      {
        cuts.push_back((u - p.pitch) / p.psi);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    return cuts;
  };

  std::vector<Eigen::Vector3d> positions;
  const auto count = static_cast<std::size_t>(std::llround(p.duration_s * p.rate_hz));
  positions.reserve(count + 1);
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  positions.push_back(pos);
  for (std::size_t k = 1; k <= count; ++k)
  {
    const double a = static_cast<double>(k - 1) / p.rate_hz;
    const double b = static_cast<double>(k) / p.rate_hz;
    double from = a;
    for (double cut : kinks_between(a, b))
    {
      pos += integrate(velocity_of, from, cut);
      from = cut;
    }
    pos += integrate(velocity_of, from, b);
    positions.push_back(pos);
  }

  return sample(
      p,
      [&](double t) -> Eigen::Vector3d {
        return positions[static_cast<std::size_t>(std::llround(t * p.rate_hz))];
      },
      [&](double t) {
        const auto [phi, slope] = pitch_of(t);
        const double theta = p.heading + p.omega * t;
        const double tilt = p.psi * slope;
        const Eigen::Vector3d acc = p.speed * Eigen::Vector3d(-p.omega * std::sin(theta) * std::cos(phi) -
                                                                  tilt * std::cos(theta) * std::sin(phi),
                                                              p.omega * std::cos(theta) * std::cos(phi) -
                                                                  tilt * std::sin(theta) * std::sin(phi),
                                                              tilt * std::cos(phi));
        return Kinematics{velocity_of(t), acc};
      });
}

}  // namespace

TraceKind parse_trace_kind(std::string_view name)
{
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(lower.begin(), lower.end(), '_', '-');
  if (lower == "line")
  {
    return TraceKind::Line;
  }
  if (lower == "circle")
  {
    return TraceKind::Circle;
  }
  if (lower == "helix")
  {
    return TraceKind::Helix;
  }
  if (lower == "curved-helix")
  {
    return TraceKind::CurvedHelix;
  }
  throw ConfigError("unknown trajectory kind '" + std::string(name) + "'");
}

std::string_view trace_kind_name(TraceKind kind)
{
  switch (kind)
  {
    case TraceKind::Line:
      return "line";
    case TraceKind::Circle:
      return "circle";
    case TraceKind::Helix:
      return "helix";
    case TraceKind::CurvedHelix:
      return "curved-helix";
  }
  return "?";
}

void GeneratorParams::validate(TraceKind kind) const
{
  if (!(rate_hz > 0.0) || !(duration_s > 0.0))
  {
    throw ConfigError("rate and duration must be positive");
  }
  if (duration_s * rate_hz < 2.0)
  {
    throw ConfigError("trace must contain at least 3 samples");
  }
  if (!(speed >= 0.0))
  {
    throw ConfigError("speed must be >= 0");
  }
  switch (kind)
  {
    case TraceKind::Line:
      if (speed + accel * duration_s < 0.0)
      {
        throw ConfigError("line deceleration would reverse the direction of travel");
      }
      if (std::abs(pitch) > kPi / 2.0)
      {
        throw ConfigError("pitch must be in [-pi/2, pi/2]");
      }
      break;
    case TraceKind::Circle:
    case TraceKind::Helix:
      if (!(radius > 0.0))
      {
        throw ConfigError("radius must be positive");
      }
      if (!(speed > 0.0))
      {
        throw ConfigError("speed must be positive");
      }
      if (kind == TraceKind::Helix && !(std::abs(climb_rate) < speed))
      {
        throw ConfigError("climb rate must be smaller than the speed");
      }
      break;
    case TraceKind::CurvedHelix:
      if (!(max_pitch > 0.0 && max_pitch < kPi / 2.0))
      {
        throw ConfigError("max pitch must be in (0, pi/2)");
      }
      if (std::abs(pitch) > max_pitch)
      {
        throw ConfigError("initial pitch must lie within +/- max pitch");
      }
      if (!(speed > 0.0))
      {
        throw ConfigError("speed must be positive");
      }
      break;
  }
}

TrajectoryTrace generate_trace(TraceKind kind, const GeneratorParams& params)
{
  params.validate(kind);
  switch (kind)
  {
    case TraceKind::Line:
      return line(params);
    case TraceKind::Circle:
    {
      GeneratorParams flat = params;
      flat.climb_rate = 0.0;
      return helix(flat);
    }
    case TraceKind::Helix:
      return helix(params);
    case TraceKind::CurvedHelix:
      return curved_helix(params);
  }
  throw ConfigError("unknown trajectory kind");
}

}  // namespace uavtrack
