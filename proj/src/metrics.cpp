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

#include "uavtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

std::string_view packet_event_name(PacketEvent event)
{
  switch (event)
  {
    case PacketEvent::None:
      return "none";
    case PacketEvent::Tx:
      return "tx";
    case PacketEvent::Rx:
      return "rx";
    case PacketEvent::Lost:
      return "lost";
  }
  return "none";
}

PacketEvent parse_packet_event(std::string_view name)
{
  if (name == "none")
  {
    return PacketEvent::None;
  }
  if (name == "tx")
  {
    return PacketEvent::Tx;
  }
  if (name == "rx")
  {
    return PacketEvent::Rx;
  }
  if (name == "lost")
  {
    return PacketEvent::Lost;
  }
  throw ConfigError("unknown packet event '" + std::string(name) + "'");
}

double percentile(std::span<const double> sorted, double p)
{
  const double position = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(position));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = position - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

AxisSummary summarize_values(std::vector<double> values)
{
  if (values.empty())
  {
    throw ConfigError("cannot summarize an empty error series");
  }
  std::sort(values.begin(), values.end());
  AxisSummary s;
  s.count = values.size();
  s.median = percentile(values, 0.5);
  s.q1 = percentile(values, 0.25);
  s.q3 = percentile(values, 0.75);
  s.p75 = s.q3;
  s.p95 = percentile(values, 0.95);
  s.max = values.back();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = *std::lower_bound(values.begin(), values.end(), low_fence);
  s.whisker_high = *(std::upper_bound(values.begin(), values.end(), high_fence) - 1);
  return s;
}

MetricSummary summarize(std::span<const ErrorRecord> records)
{
  if (records.empty())
  {
    throw ConfigError("cannot summarize an empty record list");
  }
  std::vector<double> x, y, z, norm;
  x.reserve(records.size());
  y.reserve(records.size());
  z.reserve(records.size());
  norm.reserve(records.size());
  for (const auto& r : records)
  {
    x.push_back(std::abs(r.err_x));
    y.push_back(std::abs(r.err_y));
    z.push_back(std::abs(r.err_z));
    norm.push_back(r.err_3d);
  }
  return {summarize_values(std::move(x)), summarize_values(std::move(y)), summarize_values(std::move(z)),
          summarize_values(std::move(norm))};
}

}  // namespace uavtrack
