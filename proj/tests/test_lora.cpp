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

#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "uavtrack/errors.hpp"
#include "uavtrack/lora.hpp"

namespace uavtrack
{
namespace
{

RadioConfig radio(int sf, double bw)
{
  RadioConfig cfg;
  cfg.sf = sf;
  cfg.bw_hz = bw;
  return cfg;
}

// Largest airtime inside any window of `window` seconds. The maximum is
// reached with one edge on a packet boundary.
double max_window_airtime(const std::vector<double>& starts, double airtime, double window)
{
  const auto inside = [&](double from) {
    const double to = from + window;
    double total = 0.0;
    for (const double s : starts)
    {
      total += std::max(0.0, std::min(s + airtime, to) - std::max(s, from));
    }
    return total;
  };
  double worst = 0.0;
  for (const double s : starts)
  {
    worst = std::max({worst, inside(s), inside(s + airtime - window)});
  }
  return worst;
}

TEST(Airtime, ReferenceValues)
{
  EXPECT_NEAR(airtime(radio(7, 125000), 12), 0.0412, 1e-4);
  EXPECT_NEAR(airtime(radio(7, 250000), 9), 0.0206, 1e-4);
  EXPECT_NEAR(airtime(radio(8, 125000), 11), 0.0824, 1e-4);
  EXPECT_DOUBLE_EQ(airtime(radio(7, 125000), 12), 0.041216);
  EXPECT_DOUBLE_EQ(airtime(radio(8, 125000), 9), 0.072192);
}

TEST(Airtime, PlateauAcrossPayloadsAtSf7)
{
  for (const double bw : {125000.0, 250000.0})
  {
    const double t9 = airtime(radio(7, bw), 9);
    EXPECT_DOUBLE_EQ(airtime(radio(7, bw), 11), t9);
    EXPECT_DOUBLE_EQ(airtime(radio(7, bw), 12), t9);
  }
}

TEST(Airtime, MonotoneInLengthAndSf)
{
  for (const double bw : {125000.0, 250000.0})
  {
    for (int sf = 7; sf <= 12; ++sf)
    {
      for (std::size_t len = 1; len < 255; ++len)
      {
        EXPECT_LE(airtime(radio(sf, bw), len), airtime(radio(sf, bw), len + 1));
        if (sf < 12)
        {
          EXPECT_LE(airtime(radio(sf, bw), len), airtime(radio(sf + 1, bw), len));
        }
      }
    }
  }
}

TEST(Airtime, HalvingBandwidthDoubles)
{
  for (int sf = 7; sf <= 12; ++sf)
  {
    for (std::size_t len : {1u, 9u, 11u, 12u, 51u, 222u})
    {
      RadioConfig wide = radio(sf, 250000);
      RadioConfig narrow = radio(sf, 125000);
      wide.ldro = narrow.ldro = LowDataRateOptimize::Off;
      EXPECT_NEAR(airtime(narrow, len), 2 * airtime(wide, len), 1e-15);
      if (sf <= 10)
      {
        EXPECT_NEAR(airtime(radio(sf, 125000), len), 2 * airtime(radio(sf, 250000), len), 1e-15);
      }
    }
  }
}

TEST(Airtime, LowDataRateOptimizeAuto)
{
  EXPECT_FALSE(radio(10, 125000).low_data_rate_optimize());
  EXPECT_TRUE(radio(11, 125000).low_data_rate_optimize());
  EXPECT_TRUE(radio(12, 125000).low_data_rate_optimize());
  EXPECT_TRUE(radio(12, 250000).low_data_rate_optimize());
  EXPECT_FALSE(radio(11, 250000).low_data_rate_optimize());
}

TEST(Airtime, InvalidConfig)
{
  EXPECT_THROW((void)airtime(radio(6, 125000), 9), ConfigError);
  EXPECT_THROW((void)airtime(radio(13, 125000), 9), ConfigError);
  EXPECT_THROW((void)airtime(radio(7, 500000), 9), ConfigError);
  EXPECT_THROW((void)airtime(radio(7, 125000), 0), ConfigError);
  RadioConfig dc = radio(7, 125000);
  dc.duty_cycle = 0.0;
  EXPECT_THROW((void)min_interval(dc, 9), ConfigError);
}

TEST(MinInterval, ReferenceValues)
{
  EXPECT_NEAR(min_interval(radio(7, 250000), 12), 2.06, 0.005);
  EXPECT_NEAR(min_interval(radio(8, 125000), 9), 7.22, 0.005);
  EXPECT_NEAR(min_interval(radio(8, 250000), 12), 4.12, 0.005);
}

TEST(NextTxTime, PeriodicStarts)
{
  const RadioConfig cfg = radio(7, 250000);
  EXPECT_NEAR(next_tx_time(0.0206, cfg, 12), 2.06, 0.005);
  EXPECT_NEAR(next_tx_time(airtime(cfg, 12), cfg, 12), min_interval(cfg, 12), 1e-12);
  RadioConfig full = cfg;
  full.duty_cycle = 1.0;
  EXPECT_DOUBLE_EQ(next_tx_time(1.5, full, 12), 1.5);
  const RadioConfig sf8 = radio(8, 125000);
  EXPECT_NEAR(next_tx_time(airtime(sf8, 12), sf8, 12), 8.24, 0.005);
}

TEST(Link, RangeBehaviour)
{
  const LinkParams link;
  EXPECT_NEAR(received_power_dbm(2000, radio(7, 250000), link), -117.8, 0.05);
  EXPECT_NEAR(received_power_dbm(3000, radio(7, 250000), link), -124.4, 0.05);
  EXPECT_DOUBLE_EQ(sensitivity_dbm(radio(7, 250000), link), -121.0);
  EXPECT_TRUE(link_delivered(2000, radio(7, 250000), link));
  EXPECT_FALSE(link_delivered(3000, radio(7, 250000), link));
  EXPECT_TRUE(link_delivered(3000, radio(8, 125000), link));
  EXPECT_TRUE(link_delivered(1e-6, radio(7, 250000), link));
  EXPECT_TRUE(link_delivered(0.5, radio(12, 250000), link));
}

TEST(Link, ShadowingAndForcedDelivery)
{
  LinkParams link;
  EXPECT_FALSE(link_delivered(2000, radio(7, 250000), link, 5.0));
  link.force_delivery = true;
  EXPECT_TRUE(link_delivered(1e6, radio(7, 250000), link));
}

class DutyCycle : public ::testing::TestWithParam<std::tuple<int, double, std::size_t>>
{
};

TEST_P(DutyCycle, TenMinuteScheduleRespectsBudget)
{
  const auto [sf, bw, len] = GetParam();
  const RadioConfig cfg = radio(sf, bw);
  DutyCycleScheduler scheduler(cfg, len);
  for (int k = 0; k <= 60000; ++k)
  {
    const double t = k * 0.01;
    if (scheduler.can_transmit(t))
    {
      scheduler.record(t);
    }
  }
  const auto& starts = scheduler.starts();
  ASSERT_FALSE(starts.empty());
  const double w = scheduler.window();
  EXPECT_LE(max_window_airtime(starts, scheduler.airtime(), w) / w, cfg.duty_cycle + 1e-12);
  for (std::size_t i = 1; i < starts.size(); ++i)
  {
    EXPECT_GE(starts[i] - starts[i - 1], min_interval(cfg, len) - 1e-9);
  }
  // Whole multiples of the window follow from the window itself.
  for (const double bigger : {2.0 * w, 3.0 * w, 10.0 * w})
  {
    EXPECT_LE(max_window_airtime(starts, scheduler.airtime(), bigger) / bigger, cfg.duty_cycle + 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(AllRadios, DutyCycle,
                         ::testing::Combine(::testing::Range(7, 13), ::testing::Values(125000.0, 250000.0),
                                            ::testing::Values(std::size_t{9}, std::size_t{11}, std::size_t{12})));

TEST(DutyCycleScheduler, SixtySecondCountAtSf7)
{
  DutyCycleScheduler scheduler(radio(7, 250000), 12);
  for (int k = 0; k < 6000; ++k)
  {
    if (scheduler.can_transmit(k * 0.01))
    {
      scheduler.record(k * 0.01);
    }
  }
  const auto n = static_cast<long>(scheduler.starts().size());
  const long expected = static_cast<long>(60.0 / 2.0608);
  EXPECT_GE(n, expected - 1);
  EXPECT_LE(n, expected + 1);
}

TEST(DutyCycleScheduler, FullDutyCycleIsBackToBack)
{
  RadioConfig cfg = radio(7, 250000);
  cfg.duty_cycle = 1.0;
  DutyCycleScheduler scheduler(cfg, 12);
  const double t = scheduler.airtime();
  scheduler.record(0.0);
  EXPECT_FALSE(scheduler.can_transmit(0.5 * t));
  EXPECT_TRUE(scheduler.can_transmit(t));
}

TEST(Quantizer, MidRiserAndMidTread)
{
  const Quantizer riser{0.0, 1.0, 4, false, false};
  EXPECT_EQ(riser.encode(0.0), 0u);
  EXPECT_EQ(riser.encode(3.999), 3u);
  EXPECT_FALSE(riser.encode(4.0));
  EXPECT_FALSE(riser.encode(-1e-9));
  EXPECT_DOUBLE_EQ(riser.decode(2), 2.5);
  const Quantizer closed{0.0, 1.0, 4, false, true};
  EXPECT_EQ(closed.encode(4.0), 3u);
  const Quantizer tread{0.0, 0.1, 256, true};
  EXPECT_EQ(tread.encode(0.0), 0u);
  EXPECT_EQ(tread.encode(0.149), 1u);
  EXPECT_DOUBLE_EQ(tread.decode(255), 25.5);
  EXPECT_FALSE(tread.encode(25.56));
  EXPECT_FALSE(tread.encode(std::nan("")));
}

TEST(Codec, PayloadSizes)
{
  const EncodingBox box;
  const UavState s{100, 200, 300, 0.1, 0.2, 5, 0.3, 0.4, 0.5};
  EXPECT_EQ(encode_state(s, ModelKind::DR, box).size(), 9u);
  EXPECT_EQ(encode_state(s, ModelKind::CtraPlus, box).size(), 11u);
  EXPECT_EQ(encode_state(s, ModelKind::Ctra3D, box).size(), 12u);
}

TEST(Codec, ByteLayout)
{
  EncodingBox box;
  box.side = 65536.0;  // one metre per position code
  const UavState s{0x1234 + 0.5, 0x0102 + 0.2, 0xABCD + 0.9, -kPi, -kPi / 2, 2.0, -12.8, -kPi, kPi};
  const std::vector<std::uint8_t> bytes = encode_state(s, ModelKind::Ctra3D, box);
  const std::vector<std::uint8_t> expected{0x34, 0x12, 0x02, 0x01, 0xCD, 0xAB, 0, 0, 20, 0, 0, 255};
  EXPECT_EQ(bytes, expected);
}

// With the unsigned offsets used on the wire, zero position offset and zero
// speed encode to code 0; signed quantities at zero sit mid-range.
TEST(Codec, OriginStateCodes)
{
  const EncodingBox box;
  const std::vector<std::uint8_t> bytes = encode_state(UavState{}, ModelKind::Ctra3D, box);
  for (int i = 0; i < 6; ++i)
  {
    EXPECT_EQ(bytes[i], 0u) << i;
  }
  EXPECT_EQ(bytes[8], 0u);
  EXPECT_EQ(bytes[6], 128u);
  EXPECT_EQ(bytes[7], 128u);
  EXPECT_EQ(bytes[9], 128u);
  EXPECT_EQ(bytes[10], 128u);
  EXPECT_EQ(bytes[11], 128u);
}

TEST(Codec, ZeroPayloadDecodesToRangeMinima)
{
  const EncodingBox box;
  const std::vector<std::uint8_t> zero(9, 0);
  const UavState s = decode_state(zero, ModelKind::DR, box);
  EXPECT_NEAR(s.x, 0.0, box.position_axis(0).max_error());
  EXPECT_NEAR(s.y, 0.0, box.position_axis(1).max_error());
  EXPECT_NEAR(s.z, 0.0, box.position_axis(2).max_error());
  EXPECT_NEAR(s.theta, -kPi, box.yaw.max_error() + 1e-15);
  EXPECT_NEAR(s.phi, -kPi / 2, box.pitch.max_error() + 1e-15);
  EXPECT_EQ(s.v, 0.0);
}

TEST(Codec, WrongLengthIsFormatError)
{
  const std::vector<std::uint8_t> eleven(11, 0);
  EXPECT_THROW((void)decode_state(eleven, ModelKind::Ctra3D, EncodingBox{}), FormatError);
  EXPECT_NO_THROW((void)decode_state(eleven, ModelKind::CtraPlus, EncodingBox{}));
}

TEST(Codec, OutOfRangeIsRangeError)
{
  const EncodingBox box;
  UavState s;
  s.x = -1.0;
  EXPECT_THROW((void)encode_state(s, ModelKind::DR, box), RangeError);
  s.x = 13000.0;
  EXPECT_THROW((void)encode_state(s, ModelKind::DR, box), RangeError);
  s.x = 1.0;
  s.v = 30.0;
  EXPECT_THROW((void)encode_state(s, ModelKind::DR, box), RangeError);
  s.v = 1.0;
  s.omega = 4.0;
  EXPECT_NO_THROW((void)encode_state(s, ModelKind::DR, box));
  EXPECT_THROW((void)encode_state(s, ModelKind::CtraPlus, box), RangeError);
  EXPECT_NO_THROW((void)encode_state(clamp_to_box(s, box), ModelKind::CtraPlus, box));
}

TEST(Codec, RandomRoundTripWithinHalfStep)
{
  EncodingBox box;
  box.origin = {-6500, -6500, -6500};
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> pos(-6500, 6499.99);
  std::uniform_real_distribution<double> th(-kPi, kPi);
  std::uniform_real_distribution<double> ph(-kPi / 2, kPi / 2);
  std::uniform_real_distribution<double> v(0, 25.5);
  std::uniform_real_distribution<double> a(-12.8, 12.7);
  std::uniform_real_distribution<double> r(-kPi, kPi);
  for (int i = 0; i < 20000; ++i)
  {
    const UavState s{pos(rng), pos(rng), pos(rng), th(rng), ph(rng), v(rng), a(rng), r(rng), r(rng)};
    const auto bytes = encode_state(s, ModelKind::Ctra3D, box);
    const UavState d = decode_state(bytes, ModelKind::Ctra3D, box);
    EXPECT_LE(std::abs(d.x - s.x), 0.0992);
    EXPECT_LE(std::abs(d.y - s.y), 0.0992);
    EXPECT_LE(std::abs(d.z - s.z), 0.0992);
    EXPECT_LE(std::abs(wrap_angle(d.theta - s.theta)), box.yaw.max_error() + 1e-12);
    EXPECT_LE(std::abs(d.phi - s.phi), box.pitch.max_error() + 1e-12);
    EXPECT_LE(std::abs(d.v - s.v), 0.05 + 1e-12);
    EXPECT_LE(std::abs(d.a - s.a), 0.05 + 1e-12);
    EXPECT_LE(std::abs(d.omega - s.omega), box.rate.max_error() + 1e-12);
    EXPECT_LE(std::abs(d.psi - s.psi), box.rate.max_error() + 1e-12);
    EXPECT_EQ(encode_state(d, ModelKind::Ctra3D, box), bytes);
  }
}

TEST(Codec, EveryCodeIsAFixedPoint)
{
  const EncodingBox box;
  for (std::uint32_t c = 0; c < 65536; ++c)
  {
    const Quantizer q = box.position_axis(0);
    ASSERT_EQ(q.encode(q.decode(c)), c);
  }
  for (const Quantizer* q : {&box.speed, &box.accel, &box.yaw, &box.pitch, &box.rate})
  {
    for (std::uint32_t c = 0; c < q->levels; ++c)
    {
      ASSERT_EQ(q->encode(q->decode(c)), c);
    }
  }
}

}  // namespace
}  // namespace uavtrack
