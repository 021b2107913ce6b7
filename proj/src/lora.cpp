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

#include "uavtrack/lora.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

void RadioConfig::validate() const
{
  if (sf < 7 || sf > 12)
  {
    throw ConfigError("spreading factor must be in [7, 12], got " + std::to_string(sf));
  }
  if (bw_hz != 125000.0 && bw_hz != 250000.0)
  {
    throw ConfigError("bandwidth must be 125000 or 250000 Hz");
  }
  if (cr < 1 || cr > 4)
  {
    throw ConfigError("coding rate index must be in [1, 4]");
  }
  if (preamble_symbols < 0)
  {
    throw ConfigError("preamble length must be >= 0");
  }
  if (!(duty_cycle > 0.0 && duty_cycle <= 1.0))
  {
    throw ConfigError("duty cycle must be in (0, 1]");
  }
}

double RadioConfig::symbol_time() const { return std::ldexp(1.0, sf) / bw_hz; }

bool RadioConfig::low_data_rate_optimize() const
{
  switch (ldro)
  {
    case LowDataRateOptimize::On:
      return true;
    case LowDataRateOptimize::Off:
      return false;
    case LowDataRateOptimize::Auto:
      break;
  }
  return symbol_time() > 0.016;
}

double airtime(const RadioConfig& cfg, std::size_t payload_len)
{
  cfg.validate();
  if (payload_len < 1)
  {
    throw ConfigError("payload length must be >= 1 byte");
  }
  const double t_sym = cfg.symbol_time();
  const int sf = cfg.sf;
  const int de = cfg.low_data_rate_optimize() ? 1 : 0;
  const int ih = cfg.explicit_header ? 0 : 1;
  const int crc = cfg.crc ? 1 : 0;
  const int numerator = 8 * static_cast<int>(payload_len) - 4 * sf + 28 + 16 * crc - 20 * ih;
  const int denominator = 4 * (sf - 2 * de);
  const int blocks = std::max(0, (numerator + denominator - 1) / denominator);
  const double payload_symbols = 8.0 + static_cast<double>(blocks * (cfg.cr + 4));
  const double preamble = (static_cast<double>(cfg.preamble_symbols) + 4.25) * t_sym;
  return preamble + payload_symbols * t_sym;
}

double min_interval(const RadioConfig& cfg, std::size_t payload_len)
{
  return airtime(cfg, payload_len) / cfg.duty_cycle;
}

double next_tx_time(double last_tx_end, const RadioConfig& cfg, std::size_t payload_len)
{
  return last_tx_end + min_interval(cfg, payload_len) - airtime(cfg, payload_len);
}

double sensitivity_dbm(const RadioConfig& cfg, const LinkParams& link)
{
  cfg.validate();
  const double base = link.sensitivity_125k_dbm.at(static_cast<std::size_t>(cfg.sf - 7));
  return cfg.bw_hz == 250000.0 ? base + link.bw250_offset_db : base;
}

double received_power_dbm(double distance_m, const RadioConfig& cfg, const LinkParams& link, double shadowing_db)
{
  // Inside the reference distance the loss is clamped to the reference loss.
  const double d = std::max(distance_m, 1.0);
  const double path_loss = link.ref_loss_db + 10.0 * link.path_loss_exponent * std::log10(d);
  return cfg.tx_power_dbm - path_loss - shadowing_db;
}

bool link_delivered(double distance_m, const RadioConfig& cfg, const LinkParams& link, double shadowing_db)
{
  if (link.force_delivery)
  {
    return true;
  }
  return received_power_dbm(distance_m, cfg, link, shadowing_db) >= sensitivity_dbm(cfg, link);
}

DutyCycleScheduler::DutyCycleScheduler(const RadioConfig& cfg, std::size_t payload_len, double window_s)
  : cfg_(cfg),
    airtime_(uavtrack::airtime(cfg, payload_len)),
    interval_(uavtrack::min_interval(cfg, payload_len)),
    window_(std::max(window_s, interval_))
{
  if (!(window_s > 0.0))
  {
    throw ConfigError("duty-cycle window must be > 0");
  }
}

double DutyCycleScheduler::airtime_in(double from, double to) const
{
  double total = 0.0;
  for (auto it = starts_.rbegin(); it != starts_.rend(); ++it)
  {
    const double start = *it;
    const double end = start + airtime_;
    if (end <= from)
    {
      break;
    }
    total += std::max(0.0, std::min(end, to) - std::max(start, from));
  }
  return total;
}

bool DutyCycleScheduler::can_transmit(double t) const
{
  if (starts_.empty())
  {
    return true;
  }
  constexpr double kSlack = 1e-9;
  if (t + kSlack < starts_.back() + interval_)
  {
    return false;
  }
  if (t < starts_.back() + airtime_)
  {
    return false;
  }
  const double end = t + airtime_;
  const double used = airtime_in(end - window_, t);
  return used + airtime_ <= cfg_.duty_cycle * window_ + 1e-12;
}

double DutyCycleScheduler::record(double t)
{
  starts_.push_back(t);
  return airtime_;
}

std::optional<std::uint32_t> Quantizer::encode(double value) const
{
  if (!std::isfinite(value))
  {
    return std::nullopt;
  }
  const double scaled = (value - min) / step;
  double code = mid_tread ? std::round(scaled) : std::floor(scaled);
  const double top = static_cast<double>(levels);
  if (!mid_tread && closed_upper && code >= top && scaled <= top * (1.0 + 1e-12))
  {
    code = top - 1.0;
  }
  if (code < 0.0 || code >= top)
  {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(code);
}

double Quantizer::decode(std::uint32_t code) const
{
  const double k = static_cast<double>(code);
  return mid_tread ? min + k * step : min + (k + 0.5) * step;
}

Quantizer EncodingBox::position_axis(int axis) const
{
  return Quantizer{origin(axis), side / 65536.0, 65536, false, false};
}

void EncodingBox::validate() const
{
  if (!(side > 0.0))
  {
    throw ConfigError("encoding box side must be > 0");
  }
  for (const Quantizer* q : {&speed, &accel, &yaw, &pitch, &rate})
  {
    if (!(q->step > 0.0) || q->levels == 0 || q->levels > 256)
    {
      throw ConfigError("one-byte quantizers need a positive step and at most 256 levels");
    }
  }
}

namespace
{

std::uint32_t encode_field(const Quantizer& q, double value, const char* name)
{
  const auto code = q.encode(value);
  if (!code)
  {
    throw RangeError(std::string("field ") + name + " = " + std::to_string(value) +
                     " is outside its encoding range");
  }
  return *code;
}

}  // namespace

std::vector<std::uint8_t> encode_state(const UavState& s, ModelKind model, const EncodingBox& box)
{
  const UavState n = normalize(s);
  std::vector<std::uint8_t> out;
  out.reserve(payload_size(model));
  static constexpr const char* kAxis[] = {"x", "y", "z"};
  const double position[] = {n.x, n.y, n.z};
  for (int axis = 0; axis < 3; ++axis)
  {
    const std::uint32_t code = encode_field(box.position_axis(axis), position[axis], kAxis[axis]);
    out.push_back(static_cast<std::uint8_t>(code & 0xFFu));
    out.push_back(static_cast<std::uint8_t>(code >> 8));
  }
  out.push_back(static_cast<std::uint8_t>(encode_field(box.yaw, n.theta, "theta")));
  out.push_back(static_cast<std::uint8_t>(encode_field(box.pitch, n.phi, "phi")));
  out.push_back(static_cast<std::uint8_t>(encode_field(box.speed, n.v, "v")));
  if (model == ModelKind::DR)
  {
    return out;
  }
  out.push_back(static_cast<std::uint8_t>(encode_field(box.accel, n.a, "a")));
  out.push_back(static_cast<std::uint8_t>(encode_field(box.rate, n.omega, "omega")));
  if (model == ModelKind::Ctra3D)
  {
    out.push_back(static_cast<std::uint8_t>(encode_field(box.rate, n.psi, "psi")));
  }
  return out;
}

UavState decode_state(std::span<const std::uint8_t> payload, ModelKind model, const EncodingBox& box)
{
  if (payload.size() != payload_size(model))
  {
    throw FormatError("payload of " + std::to_string(payload.size()) + " bytes does not match " +
                      std::string(model_name(model)) + " (" + std::to_string(payload_size(model)) + " bytes)");
  }
  UavState s;
  double* position[] = {&s.x, &s.y, &s.z};
  for (int axis = 0; axis < 3; ++axis)
  {
    const std::uint32_t code = static_cast<std::uint32_t>(payload[2 * axis]) |
                               (static_cast<std::uint32_t>(payload[2 * axis + 1]) << 8);
    *position[axis] = box.position_axis(axis).decode(code);
  }
  s.theta = box.yaw.decode(payload[6]);
  s.phi = box.pitch.decode(payload[7]);
  s.v = box.speed.decode(payload[8]);
  if (model != ModelKind::DR)
  {
    s.a = box.accel.decode(payload[9]);
    s.omega = box.rate.decode(payload[10]);
  }
  if (model == ModelKind::Ctra3D)
  {
    s.psi = box.rate.decode(payload[11]);
  }
  return s;
}

UavState clamp_to_box(const UavState& s, const EncodingBox& box)
{
  auto clamp = [](const Quantizer& q, double value) {
    const double lo = q.min;
    const double hi = q.mid_tread ? q.min + (q.levels - 1) * q.step : q.min + q.levels * q.step;
    return std::clamp(value, lo, hi);
  };
  UavState out = normalize(s);
  out.v = clamp(box.speed, out.v);
  out.a = clamp(box.accel, out.a);
  out.omega = clamp(box.rate, out.omega);
  out.psi = clamp(box.rate, out.psi);
  return out;
}

}  // namespace uavtrack
