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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "uavtrack/errors.hpp"
#include "uavtrack/motion.hpp"
#include "uavtrack/trajectory.hpp"

namespace uavtrack
{
namespace
{

TrajectoryTrace parse(const std::string& text)
{
  std::istringstream in(text);
  return parse_trace(in);
}

std::size_t parse_error_line(const std::string& text)
{
  try
  {
    (void)parse(text);
  }
  catch (const ParseError& e)
  {
    return e.line();
  }
  return 0;
}

TrajectoryTrace straight_line(int n, double dt, const Eigen::Vector3d& vel)
{
  TrajectoryTrace trace;
  for (int i = 0; i < n; ++i)
  {
    TrajectorySample s;
    s.t = i * dt;
    s.position = vel * s.t;
    s.velocity = vel;
    trace.samples.push_back(s);
  }
  return derive_kinematics(trace);
}

TEST(ParseTrace, MinimalFile)
{
  const TrajectoryTrace t = parse("t,x,y,z,vx,vy,vz\n0,0,0,0,1,0,0\n0.01,0.01,0,0,1,0,0\n");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t.samples[1].position.x(), 0.01);
  EXPECT_FALSE(t.samples[0].acceleration);
}

TEST(ParseTrace, AccelerationColumns)
{
  const TrajectoryTrace t = parse("t,x,y,z,vx,vy,vz,ax,ay,az\n0,0,0,0,1,0,0,0.1,0.2,0.3\n1,1,0,0,1,0,0,0,0,0\n");
  ASSERT_TRUE(t.samples[0].acceleration);
  EXPECT_DOUBLE_EQ(t.samples[0].acceleration->z(), 0.3);
}

TEST(ParseTrace, CommentsAndBlankLines)
{
  const TrajectoryTrace t = parse("# exported\nt,x,y,z,vx,vy,vz\n\n0,0,0,0,1,0,0\n# gap\n1,1,0,0,1,0,0\r\n");
  EXPECT_EQ(t.size(), 2u);
}

TEST(ParseTrace, Errors)
{
  EXPECT_EQ(parse_error_line("t,x,y,z,vx,vy,vz\n1,0,0,0,1,0,0\n0.5,0,0,0,1,0,0\n"), 3u);
  EXPECT_EQ(parse_error_line("t,x,y,z,vx,vy,vz\n0,0,0,0,1,0,0\n0,0,0,0,1,0,0\n"), 3u);
  EXPECT_EQ(parse_error_line("t,x,y,z,vx,vy,vz\n0,0,0,nan,1,0,0\n"), 2u);
  EXPECT_EQ(parse_error_line("t,x,y,z,vx,vy,vz\n0,0,0,0,1,0\n"), 2u);
  EXPECT_EQ(parse_error_line("t,x,y,z,vx,vy,vz\n0,0,0,0,1,0,abc\n"), 2u);
  EXPECT_EQ(parse_error_line("time,x,y,z\n"), 1u);
  EXPECT_EQ(parse_error_line(""), 1u);
}

TEST(WriteTrace, RoundTrip)
{
  const TrajectoryTrace line = straight_line(5, 0.1, {1.0 / 3.0, 2.0, -0.7});
  std::ostringstream out;
  write_trace_csv(out, line);
  const TrajectoryTrace back = parse(out.str());
  ASSERT_EQ(back.size(), line.size());
  for (std::size_t i = 0; i < line.size(); ++i)
  {
    EXPECT_EQ(back.samples[i].t, line.samples[i].t);
    EXPECT_EQ(back.samples[i].position, line.samples[i].position);
    EXPECT_EQ(back.samples[i].velocity, line.samples[i].velocity);
  }
}

TEST(DeriveKinematics, StraightLine)
{
  const TrajectoryTrace t = straight_line(50, 0.01, {3.0, 4.0, 1.0});
  for (const UavState& s : t.derived)
  {
    EXPECT_NEAR(s.v, std::sqrt(26.0), 1e-12);
    EXPECT_NEAR(s.theta, std::atan2(4.0, 3.0), 1e-12);
    EXPECT_NEAR(s.phi, std::asin(1.0 / std::sqrt(26.0)), 1e-12);
    EXPECT_NEAR(s.a, 0.0, 1e-9);
    EXPECT_NEAR(s.omega, 0.0, 1e-9);
    EXPECT_NEAR(s.psi, 0.0, 1e-9);
  }
}

TEST(DeriveKinematics, NeedsThreeSamples)
{
  TrajectoryTrace t = parse("t,x,y,z,vx,vy,vz\n0,0,0,0,1,0,0\n1,1,0,0,1,0,0\n");
  EXPECT_THROW((void)derive_kinematics(t), ConfigError);
}

TEST(DeriveKinematics, HeadingUnwrappedAcrossPi)
{
  // Turning left through theta = pi at 0.5 rad/s.
  TrajectoryTrace trace;
  for (int i = 0; i < 200; ++i)
  {
    TrajectorySample s;
    s.t = i * 0.01;
    const double th = 3.0 + 0.5 * s.t;
    s.velocity = {std::cos(th), std::sin(th), 0.0};
    trace.samples.push_back(s);
  }
  trace = derive_kinematics(trace);
  for (const UavState& s : trace.derived)
  {
    EXPECT_NEAR(s.omega, 0.5, 1e-6);
    EXPECT_GE(s.theta, -kPi);
    EXPECT_LT(s.theta, kPi);
  }
}

TEST(DeriveKinematics, StationaryHoldsAngles)
{
  TrajectoryTrace trace;
  const double vx[] = {1.0, 1.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 5; ++i)
  {
    TrajectorySample s;
    s.t = i;
    s.velocity = {vx[i], vx[i], 0.0};
    trace.samples.push_back(s);
  }
  trace = derive_kinematics(trace);
  EXPECT_NEAR(trace.derived[3].theta, kPi / 4, 1e-12);
  EXPECT_EQ(trace.derived[3].omega, 0.0);
  EXPECT_EQ(trace.derived[3].psi, 0.0);
  EXPECT_EQ(trace.derived[3].v, 0.0);
}

TEST(DeriveKinematics, SpeedMatchesVelocityNorm)
{
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  TrajectoryTrace trace;
  for (int i = 0; i < 100; ++i)
  {
    TrajectorySample s;
    s.t = 0.1 * i;
    s.velocity = {g(rng), g(rng), g(rng)};
    trace.samples.push_back(s);
  }
  trace = derive_kinematics(trace);
  for (std::size_t i = 0; i < trace.size(); ++i)
  {
    EXPECT_NEAR(trace.derived[i].v, trace.samples[i].velocity.norm(), 1e-9);
    EXPECT_GE(trace.derived[i].phi, -kPi / 2);
    EXPECT_LE(trace.derived[i].phi, kPi / 2);
  }
}

TEST(StateAt, ExactAtSamples)
{
  const TrajectoryTrace t = straight_line(10, 0.1, {1.0, 2.0, 0.5});
  for (std::size_t i = 0; i < t.size(); ++i)
  {
    EXPECT_EQ(state_at(t, t.samples[i].t), t.derived[i]);
  }
}

TEST(StateAt, MidpointAndRange)
{
  const TrajectoryTrace t = straight_line(10, 0.1, {1.0, 2.0, 0.5});
  const UavState mid = state_at(t, 0.25);
  EXPECT_NEAR(mid.x, 0.5 * (t.derived[2].x + t.derived[3].x), 1e-12);
  EXPECT_NEAR(mid.y, 0.5 * (t.derived[2].y + t.derived[3].y), 1e-12);
  EXPECT_THROW((void)state_at(t, -0.01), RangeError);
  EXPECT_THROW((void)state_at(t, 0.95), RangeError);
}

TEST(StateAt, ShortestArcAcrossWrap)
{
  TrajectoryTrace trace;
  for (const double th : {kPi - 0.1, -kPi + 0.1, -kPi + 0.3})
  {
    TrajectorySample s;
    s.t = static_cast<double>(trace.size());
    s.velocity = {std::cos(th), std::sin(th), 0.0};
    trace.samples.push_back(s);
  }
  trace = derive_kinematics(trace);
  const UavState mid = state_at(trace, 0.5);
  EXPECT_NEAR(std::abs(mid.theta), kPi, 1e-9);
  const UavState quarter = state_at(trace, 0.25);
  EXPECT_NEAR(quarter.theta, kPi - 0.05, 1e-9);
}

TEST(SynthesizeMeasurement, ZeroVarianceIsTruth)
{
  NoiseConfig noise;
  noise.r = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  std::mt19937_64 rng(1);
  const UavState truth{1, 2, 3, 0.4, 0.5, 6, 0.7, 0.8, 0.9};
  EXPECT_EQ(synthesize_measurement(truth, noise, rng), truth);
}

TEST(SynthesizeMeasurement, EmpiricalVariance)
{
  const NoiseConfig noise;
  std::mt19937_64 rng(42);
  const UavState truth{0, 0, 0, 0, 0, 10, 0, 0, 0};
  double sum = 0.0;
  double sum2 = 0.0;
  double cross = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i)
  {
    const UavState m = synthesize_measurement(truth, noise, rng);
    sum += m.z;
    sum2 += m.z * m.z;
    cross += m.x * m.z;
  }
  const double var = sum2 / n - (sum / n) * (sum / n);
  EXPECT_NEAR(var, 3.7481, 0.05 * 3.7481);
  EXPECT_NEAR(cross / n, 0.0, 0.05);
}

TEST(SynthesizeMeasurement, DeterministicPerSeed)
{
  const NoiseConfig noise;
  const UavState truth{1, 2, 3, 3.1, 1.5, 6, 0.7, 0.8, 0.9};
  std::mt19937_64 a(7);
  std::mt19937_64 b(7);
  for (int i = 0; i < 1000; ++i)
  {
    const UavState ma = synthesize_measurement(truth, noise, a);
    const UavState mb = synthesize_measurement(truth, noise, b);
    ASSERT_EQ(ma, mb);
    ASSERT_GE(ma.theta, -kPi);
    ASSERT_LT(ma.theta, kPi);
    ASSERT_LE(ma.phi, kPi / 2);
  }
}

}  // namespace
}  // namespace uavtrack
