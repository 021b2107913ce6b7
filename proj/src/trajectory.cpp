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

#include "uavtrack/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

namespace
{

std::vector<std::string_view> split_csv(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true)
  {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
    {
      field.remove_prefix(1);
    }
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    {
      field.remove_suffix(1);
    }
    fields.push_back(field);
    if (comma == std::string_view::npos)
    {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line)
{
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
  {
    throw ParseError("malformed number '" + std::string(field) + "'", line);
  }
  if (!std::isfinite(value))
  {
    throw ParseError("non-finite value '" + std::string(field) + "'", line);
  }
  return value;
}

void write_number(std::ostream& out, double value)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
}

// Central difference of a sampled series, one-sided at both ends.
std::vector<double> differentiate(const std::vector<double>& t, const std::vector<double>& f)
{
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2)
  {
    return d;
  }
  d.front() = (f[1] - f[0]) / (t[1] - t[0]);
  d.back() = (f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i)
  {
    d[i] = (f[i + 1] - f[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  return d;
}

std::vector<double> unwrap(const std::vector<double>& angles)
{
  std::vector<double> out(angles.size());
  if (angles.empty())
  {
    return out;
  }
  out[0] = angles[0];
  for (std::size_t i = 1; i < angles.size(); ++i)
  {
    out[i] = out[i - 1] + wrap_angle(angles[i] - angles[i - 1]);
  }
  return out;
}

}  // namespace

double TrajectoryTrace::sample_rate() const
{
  if (samples.size() < 2 || duration() <= 0.0)
  {
    return 0.0;
  }
  return static_cast<double>(samples.size() - 1) / duration();
}

TrajectoryTrace TrajectoryTrace::translated(const Eigen::Vector3d& offset) const
{
  TrajectoryTrace out = *this;
  for (auto& sample : out.samples)
  {
    sample.position += offset;
  }
  for (auto& state : out.derived)
  {
    state.x += offset.x();
    state.y += offset.y();
    state.z += offset.z();
  }
  return out;
}

TrajectoryTrace parse_trace(std::istream& input)
{
  static constexpr std::string_view kBase[] = {"t", "x", "y", "z", "vx", "vy", "vz"};
  static constexpr std::string_view kAccel[] = {"ax", "ay", "az"};

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool with_accel = false;
  TrajectoryTrace trace;

  while (std::getline(input, line))
  {
    ++line_no;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r')
    {
      view.remove_suffix(1);
    }
    if (view.empty() || view.front() == '#')
    {
      continue;
    }
    const auto fields = split_csv(view);
    if (!have_header)
    {
      if (fields.size() != 7 && fields.size() != 10)
      {
        throw ParseError("header must be t,x,y,z,vx,vy,vz[,ax,ay,az]", line_no);
      }
      for (std::size_t i = 0; i < 7; ++i)
      {
        if (fields[i] != kBase[i])
        {
          throw ParseError("unexpected header column '" + std::string(fields[i]) + "'", line_no);
        }
      }
      with_accel = fields.size() == 10;
      for (std::size_t i = 0; with_accel && i < 3; ++i)
      {
        if (fields[7 + i] != kAccel[i])
        {
          throw ParseError("unexpected header column '" + std::string(fields[7 + i]) + "'", line_no);
        }
      }
      have_header = true;
      continue;
    }

    const std::size_t expected = with_accel ? 10 : 7;
    if (fields.size() != expected)
    {
      throw ParseError("expected " + std::to_string(expected) + " columns, got " + std::to_string(fields.size()),
                       line_no);
    }
    TrajectorySample sample;
    sample.t = parse_number(fields[0], line_no);
    for (int i = 0; i < 3; ++i)
    {
      sample.position(i) = parse_number(fields[1 + i], line_no);
      sample.velocity(i) = parse_number(fields[4 + i], line_no);
    }
    if (with_accel)
    {
      Eigen::Vector3d acc;
      for (int i = 0; i < 3; ++i)
      {
        acc(i) = parse_number(fields[7 + i], line_no);
      }
      sample.acceleration = acc;
    }
    if (!trace.samples.empty() && !(sample.t > trace.samples.back().t))
    {
      throw ParseError("timestamps must be strictly increasing", line_no);
    }
    trace.samples.push_back(sample);
  }
  if (!have_header)
  {
    throw ParseError("missing header", std::max<std::size_t>(line_no, 1));
  }
  return trace;
}

TrajectoryTrace load_trace(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open trace file " + path.string());
  }
  try
  {
    return parse_trace(in);
  }
  catch (const ParseError& e)
  {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_trace_csv(std::ostream& out, const TrajectoryTrace& trace)
{
  const bool with_accel = !trace.samples.empty() &&
                          std::all_of(trace.samples.begin(), trace.samples.end(),
                                      [](const TrajectorySample& s) { return s.acceleration.has_value(); });
  out << (with_accel ? "t,x,y,z,vx,vy,vz,ax,ay,az\n" : "t,x,y,z,vx,vy,vz\n");
  for (const auto& s : trace.samples)
  {
    write_number(out, s.t);
    for (int i = 0; i < 3; ++i)
    {
      out << ',';
      write_number(out, s.position(i));
    }
    for (int i = 0; i < 3; ++i)
    {
      out << ',';
      write_number(out, s.velocity(i));
    }
    if (with_accel)
    {
      for (int i = 0; i < 3; ++i)
      {
        out << ',';
        write_number(out, (*s.acceleration)(i));
      }
    }
    out << '\n';
  }
}

TrajectoryTrace derive_kinematics(TrajectoryTrace trace)
{
  const std::size_t n = trace.samples.size();
  if (n < 3)
  {
    throw ConfigError("deriving kinematics needs at least 3 samples");
  }
  std::vector<double> t(n), speed(n), heading(n), pitch(n);
  std::vector<bool> stationary(n, false);
  double last_heading = 0.0;
  double last_pitch = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    const Eigen::Vector3d& vel = trace.samples[i].velocity;
    t[i] = trace.samples[i].t;
    speed[i] = vel.norm();
    if (speed[i] < kHeadingSpeedEps)
    {
      stationary[i] = true;
      heading[i] = last_heading;
      pitch[i] = last_pitch;
      continue;
    }
    heading[i] = std::atan2(vel.y(), vel.x());
    pitch[i] = std::asin(std::clamp(vel.z() / std::max(speed[i], kHeadingSpeedEps), -1.0, 1.0));
    last_heading = heading[i];
    last_pitch = pitch[i];
  }

  const std::vector<double> accel = differentiate(t, speed);
  const std::vector<double> yaw_rate = differentiate(t, unwrap(heading));
  const std::vector<double> tilt_rate = differentiate(t, pitch);

  trace.derived.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    UavState& s = trace.derived[i];
    const auto& sample = trace.samples[i];
    s.x = sample.position.x();
    s.y = sample.position.y();
    s.z = sample.position.z();
    s.theta = wrap_angle(heading[i]);
    s.phi = pitch[i];
    s.v = speed[i];
    s.a = accel[i];
    s.omega = stationary[i] ? 0.0 : yaw_rate[i];
    s.psi = stationary[i] ? 0.0 : tilt_rate[i];
  }
  return trace;
}

UavState state_at(const TrajectoryTrace& trace, double t)
{
  if (trace.derived.size() != trace.samples.size() || trace.empty())
  {
    throw ConfigError("state_at requires a trace with derived kinematics");
  }
  if (t < trace.start_time() || t > trace.end_time())
  {
    throw RangeError("time " + std::to_string(t) + " is outside the trace span");
  }
  const auto it = std::upper_bound(trace.samples.begin(), trace.samples.end(), t,
                                   [](double value, const TrajectorySample& s) { return value < s.t; });
  const std::size_t hi = static_cast<std::size_t>(it - trace.samples.begin());
  if (hi == trace.samples.size())
  {
    return trace.derived.back();
  }
  const std::size_t lo = hi - 1;
  const UavState& a = trace.derived[lo];
  if (t == trace.samples[lo].t)
  {
    return a;
  }
  const UavState& b = trace.derived[hi];
  const double f = (t - trace.samples[lo].t) / (trace.samples[hi].t - trace.samples[lo].t);
  auto lerp = [f](double p, double q) { return p + (q - p) * f; };

  UavState out;
  out.x = lerp(a.x, b.x);
  out.y = lerp(a.y, b.y);
  out.z = lerp(a.z, b.z);
  out.theta = wrap_angle(a.theta + wrap_angle(b.theta - a.theta) * f);
  out.phi = a.phi + (b.phi - a.phi) * f;
  out.v = lerp(a.v, b.v);
  out.a = lerp(a.a, b.a);
  out.omega = lerp(a.omega, b.omega);
  out.psi = lerp(a.psi, b.psi);
  return out;
}

UavState synthesize_measurement(const UavState& truth, const NoiseConfig& noise, std::mt19937_64& rng)
{
  std::normal_distribution<double> standard(0.0, 1.0);
  UavState z = truth;
  for (int i = 0; i < kComponentCount; ++i)
  {
    // Always draw so the stream position does not depend on the variances.
    const double draw = standard(rng);
    z[i] += std::sqrt(noise.r[i]) * draw;
  }
  z.theta = wrap_angle(z.theta);
  z.phi = std::clamp(z.phi, -kPi / 2.0, kPi / 2.0);
  return z;
}

}  // namespace uavtrack
