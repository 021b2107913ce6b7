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
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "uavtrack/state.hpp"

namespace uavtrack
{

enum class LowDataRateOptimize
{
  Auto,  // on when the symbol time exceeds 16 ms
  On,
  Off,
};

struct RadioConfig
{
  int sf = 7;
  double bw_hz = 125000.0;
  int cr = 1;  // coding rate 4/(4+cr)
  int preamble_symbols = 8;
  bool explicit_header = true;
  bool crc = true;
  LowDataRateOptimize ldro = LowDataRateOptimize::Auto;
  double tx_power_dbm = 14.0;
  double duty_cycle = 0.01;

  void validate() const;
  [[nodiscard]] double symbol_time() const;
  [[nodiscard]] bool low_data_rate_optimize() const;
};

/// Log-distance path loss with optional log-normal shadowing.
struct LinkParams
{
  double path_loss_exponent = 3.76;
  double ref_loss_db = 7.7;  // at 1 m
  double shadowing_sigma_db = 0.0;
  /// Receiver sensitivity at 125 kHz for SF7..SF12.
  std::array<double, 6> sensitivity_125k_dbm{-124.0, -127.0, -130.0, -133.0, -135.0, -137.0};
  /// Added to the 125 kHz sensitivity for 250 kHz channels.
  double bw250_offset_db = 3.0;
  /// Bypasses the link budget; every packet is received.
  bool force_delivery = false;
};

/// Time on air in seconds, standard LoRa symbol-count formula.
[[nodiscard]] double airtime(const RadioConfig& cfg, std::size_t payload_len);

/// Start-to-start spacing that keeps a single device at its duty cycle.
[[nodiscard]] double min_interval(const RadioConfig& cfg, std::size_t payload_len);

/// Earliest start after a transmission that ended at `last_tx_end`.
[[nodiscard]] double next_tx_time(double last_tx_end, const RadioConfig& cfg, std::size_t payload_len);

[[nodiscard]] double sensitivity_dbm(const RadioConfig& cfg, const LinkParams& link);

[[nodiscard]] double received_power_dbm(double distance_m, const RadioConfig& cfg, const LinkParams& link,
                                        double shadowing_db = 0.0);

[[nodiscard]] bool link_delivered(double distance_m, const RadioConfig& cfg, const LinkParams& link,
                                  double shadowing_db = 0.0);

/// Per-device transmission gate.
///
/// Consecutive starts are spaced by at least min_interval(). Additionally no
/// transmission is admitted if the airtime inside any window of
/// `window_s` seconds ending at its end would exceed duty_cycle * window_s.
/// A single packet can outlast the budget of a short window, so the window
/// is widened to min_interval() when that is longer.
class DutyCycleScheduler
{
public:
  DutyCycleScheduler(const RadioConfig& cfg, std::size_t payload_len, double window_s = 60.0);

  [[nodiscard]] bool can_transmit(double t) const;
  /// Records a transmission starting at `t`. Returns its airtime.
  double record(double t);

  [[nodiscard]] double airtime() const { return airtime_; }
  [[nodiscard]] double window() const { return window_; }
  [[nodiscard]] const std::vector<double>& starts() const { return starts_; }

private:
  [[nodiscard]] double airtime_in(double from, double to) const;

  RadioConfig cfg_;
  double airtime_;
  double interval_;
  double window_;
  std::vector<double> starts_;
};

/// Uniform scalar quantizer with `levels` codes.
///
/// Mid-riser quantizers split [min, min + levels*step) into cells and decode
/// to the cell centre. Mid-tread quantizers decode code k to min + k*step and
/// accept inputs within half a step of that grid.
struct Quantizer
{
  double min = 0.0;
  double step = 1.0;
  std::uint32_t levels = 256;
  bool mid_tread = false;
  /// Mid-riser only: inputs equal to the upper edge map to the last code.
  bool closed_upper = false;

  [[nodiscard]] std::optional<std::uint32_t> encode(double value) const;
  [[nodiscard]] double decode(std::uint32_t code) const;
  [[nodiscard]] double max_error() const { return 0.5 * step; }
};

struct EncodingBox
{
  Eigen::Vector3d origin{0.0, 0.0, 0.0};
  double side = 13000.0;
  Quantizer speed{0.0, 0.1, 256, true};
  Quantizer accel{-12.8, 0.1, 256, true};
  Quantizer yaw{-kPi, 2.0 * kPi / 256.0, 256, false};
  Quantizer pitch{-kPi / 2.0, kPi / 256.0, 256, false, true};
  Quantizer rate{-kPi, 2.0 * kPi / 256.0, 256, false, true};

  [[nodiscard]] Quantizer position_axis(int axis) const;
  void validate() const;
};

[[nodiscard]] constexpr std::size_t payload_size(ModelKind model)
{
  switch (model)
  {
    case ModelKind::DR:
      return 9;
    case ModelKind::CtraPlus:
      return 11;
    case ModelKind::Ctra3D:
      return 12;
  }
  return 12;
}

/// Byte layout: x, y, z as 16-bit little-endian codes, then one byte each
/// for theta, phi, v, and (CTRA+) a, omega, and (3D-CTRA) psi.
/// Throws RangeError when a field does not fit its quantizer.
[[nodiscard]] std::vector<std::uint8_t> encode_state(const UavState& s, ModelKind model, const EncodingBox& box);

/// Throws FormatError when the length does not match the model.
[[nodiscard]] UavState decode_state(std::span<const std::uint8_t> payload, ModelKind model, const EncodingBox& box);

/// Clamps the dynamic fields into their representable ranges. Position is
/// left alone.
[[nodiscard]] UavState clamp_to_box(const UavState& s, const EncodingBox& box);

struct Packet
{
  std::vector<std::uint8_t> payload;
  double tx_start = 0.0;
  double airtime = 0.0;
  Eigen::Vector3d tx_position{0.0, 0.0, 0.0};
  bool delivered = false;

  [[nodiscard]] double rx_time() const { return tx_start + airtime; }
};

}  // namespace uavtrack
