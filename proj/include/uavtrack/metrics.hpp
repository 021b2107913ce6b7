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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace uavtrack
{

enum class PacketEvent
{
  None,
  Tx,
  Rx,
  Lost,
};

[[nodiscard]] std::string_view packet_event_name(PacketEvent event);
[[nodiscard]] PacketEvent parse_packet_event(std::string_view name);

/// Tracking error at one tick: truth minus station estimate.
struct ErrorRecord
{
  double t = 0.0;
  double err_x = 0.0;
  double err_y = 0.0;
  double err_z = 0.0;
  double err_3d = 0.0;
  PacketEvent event = PacketEvent::None;
};

/// Boxplot statistics. Whiskers follow the 1.5 * IQR rule: the most extreme
/// observations within [q1 - 1.5 IQR, q3 + 1.5 IQR].
struct AxisSummary
{
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  double mean = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
};

/// Per-axis summaries are over absolute errors.
struct MetricSummary
{
  AxisSummary x;
  AxisSummary y;
  AxisSummary z;
  AxisSummary norm;
};

/// Percentile with linear interpolation between order statistics, p in
/// [0, 1]. `sorted` must be ascending and non-empty.
[[nodiscard]] double percentile(std::span<const double> sorted, double p);

/// Throws ConfigError on empty input.
[[nodiscard]] AxisSummary summarize_values(std::vector<double> values);
[[nodiscard]] MetricSummary summarize(std::span<const ErrorRecord> records);

}  // namespace uavtrack
