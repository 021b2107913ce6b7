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

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "uavtrack/filter.hpp"
#include "uavtrack/lora.hpp"
#include "uavtrack/metrics.hpp"
#include "uavtrack/trajectory.hpp"

namespace uavtrack
{

struct SimConfig
{
  ModelKind model = ModelKind::Ctra3D;
  RadioConfig radio;
  EncodingBox box;
  /// When set, the box origin is placed so the box is centred on the
  /// gateway and `box.origin` is ignored.
  bool box_centered_on_gateway = true;
  /// When false, reports reach the station without quantization.
  bool quantize = true;
  LinkParams link;
  NoiseConfig noise;
  UkfParams ukf;
  double eta = 0.9;
  double tick_dt = 0.01;
  Eigen::Vector3d gw_position{0.0, 0.0, 0.0};
  /// Initial drone-gateway distance; the trace is translated so its first
  /// sample sits at gw_position + (distance, 0, 0).
  double distance = 1000.0;
  double warmup_s = 1.0;
  /// Sliding window used by the duty-cycle scheduler.
  double duty_cycle_window_s = 60.0;
  std::uint64_t seed = 1;

  void validate() const;
  [[nodiscard]] EncodingBox effective_box() const;
};

/// Plays the trace back tick by tick: the drone filter tracks noisy
/// measurements, transmits its estimate whenever the duty cycle allows, and
/// the station predicts between received reports. One record per tick after
/// the warmup.
[[nodiscard]] std::vector<ErrorRecord> run(const SimConfig& config, const TrajectoryTrace& trace);

struct SweepKey
{
  ModelKind model = ModelKind::DR;
  int sf = 7;
  double bw_hz = 125000.0;
  double distance = 0.0;

  friend bool operator==(const SweepKey&, const SweepKey&) = default;
};

[[nodiscard]] SweepKey sweep_key(const SimConfig& config);

struct SweepRow
{
  SweepKey key;
  MetricSummary summary;
};

struct SweepResult
{
  /// One row per config, aggregated over all traces.
  std::vector<SweepRow> rows;
  /// records[config][trace]
  std::vector<std::vector<std::vector<ErrorRecord>>> records;
};

/// Seed used for trace `trace_index` under base seed `base`.
[[nodiscard]] std::uint64_t trace_seed(std::uint64_t base, std::size_t trace_index);

/// Runs every (config, trace) pair, up to `jobs` at a time. Results do not
/// depend on `jobs`.
[[nodiscard]] SweepResult run_sweep(const std::vector<SimConfig>& configs, const std::vector<TrajectoryTrace>& traces,
                                    unsigned jobs = 1);

[[nodiscard]] std::vector<SweepRow> compare(const std::vector<SimConfig>& configs,
                                            const std::vector<TrajectoryTrace>& traces, unsigned jobs = 1);

}  // namespace uavtrack
