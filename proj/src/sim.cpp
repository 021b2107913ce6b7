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

#include "uavtrack/sim.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "uavtrack/errors.hpp"
#include "uavtrack/motion.hpp"

namespace uavtrack
{

void SimConfig::validate() const
{
  radio.validate();
  box.validate();
  noise.validate();
  ukf.validate();
  if (!(tick_dt > 0.0))
  {
    throw ConfigError("tick_dt must be > 0");
  }
  if (!(distance > 0.0))
  {
    throw ConfigError("distance must be > 0");
  }
  if (!(eta > 0.0 && eta <= 1.0))
  {
    throw ConfigError("tilt decay eta must be in (0, 1]");
  }
  if (!(warmup_s >= 0.0))
  {
    throw ConfigError("warmup must be >= 0");
  }
}

EncodingBox SimConfig::effective_box() const
{
  EncodingBox b = box;
  if (box_centered_on_gateway)
  {
    b.origin = gw_position - Eigen::Vector3d::Constant(0.5 * box.side);
  }
  return b;
}

namespace
{

UavState offset_state(UavState s, const Eigen::Vector3d& offset)
{
  s.x += offset.x();
  s.y += offset.y();
  s.z += offset.z();
  return s;
}

ErrorRecord error_record(double t, const UavState& truth, const UavState& estimate, PacketEvent event)
{
  ErrorRecord r;
  r.t = t;
  r.err_x = truth.x - estimate.x;
  r.err_y = truth.y - estimate.y;
  r.err_z = truth.z - estimate.z;
  r.err_3d = std::sqrt(r.err_x * r.err_x + r.err_y * r.err_y + r.err_z * r.err_z);
  r.event = event;
  return r;
}

// The state the station would decode from the drone's current estimate.
std::optional<std::pair<std::vector<std::uint8_t>, UavState>> make_report(const SimConfig& config,
                                                                          const EncodingBox& box,
                                                                          const UavState& estimate)
{
  const UavState report = project(clamp_to_box(estimate, box), config.model);
  if (!config.quantize)
  {
    return std::pair{std::vector<std::uint8_t>{}, report};
  }
  try
  {
    auto payload = encode_state(report, config.model, box);
    UavState decoded = decode_state(payload, config.model, box);
    return std::pair{std::move(payload), decoded};
  }
  catch (const RangeError&)
  {
    // Outside the encoding box: nothing can be sent.
    return std::nullopt;
  }
}

}  // namespace

std::vector<ErrorRecord> run(const SimConfig& config, const TrajectoryTrace& input)
{
  config.validate();
  if (input.size() < 3)
  {
    throw ConfigError("trace must contain at least 3 samples");
  }
  const TrajectoryTrace trace =
      input.derived.size() == input.samples.size() ? input : derive_kinematics(input);
  if (!(trace.duration() > config.warmup_s))
  {
    throw ConfigError("trace of " + std::to_string(trace.duration()) + " s is not longer than the " +
                      std::to_string(config.warmup_s) + " s warmup");
  }

  const Eigen::Vector3d offset =
      config.gw_position + Eigen::Vector3d(config.distance, 0.0, 0.0) - trace.samples.front().position;
  const EncodingBox box = config.effective_box();
  const ModelKind model = config.model;
  const std::size_t payload_len = payload_size(model);

  std::mt19937_64 sensor_rng(config.seed);
  std::mt19937_64 channel_rng(config.seed ^ 0xA5A5A5A55A5A5A5AULL);
  std::normal_distribution<double> shadowing(0.0, 1.0);
  DutyCycleScheduler scheduler(config.radio, payload_len, config.duty_cycle_window_s);

  const double t0 = trace.start_time();
  auto truth_at = [&](double t) { return offset_state(state_at(trace, t), offset); };
  auto measure = [&](const UavState& truth) {
    return project(synthesize_measurement(truth, config.noise, sensor_rng), model);
  };

  GaussianBelief drone = reset_from_report(measure(truth_at(t0)), model, config.noise);
  std::optional<GaussianBelief> station;
  std::optional<std::pair<Packet, UavState>> in_flight;

  const auto ticks = static_cast<std::size_t>(std::floor(trace.duration() / config.tick_dt + 1e-9));
  const double scoring_start = t0 + config.warmup_s - 1e-9;
  std::vector<ErrorRecord> records;
  records.reserve(ticks);

  for (std::size_t k = 1; k <= ticks; ++k)
  {
    const double t = t0 + static_cast<double>(k) * config.tick_dt;
    const UavState truth = truth_at(t);

    drone = predict(drone, config.tick_dt, config.noise, config.ukf);
    drone = update(drone, measure(truth), config.noise, config.ukf);

    PacketEvent event = PacketEvent::None;
    if (station)
    {
      station = predict(*station, config.tick_dt, config.noise, config.ukf);
      if (model == ModelKind::Ctra3D)
      {
        station = apply_tilt_decay(*station, config.eta);
      }
    }

    if (in_flight && in_flight->first.rx_time() <= t + 1e-12)
    {
      const auto& [packet, decoded] = *in_flight;
      if (packet.delivered)
      {
        // The report describes the drone at tx_start; bring it up to now.
        const UavState now = propagate(model, decoded, t - packet.tx_start);
        station = reset_from_report(now, model, config.noise);
        event = PacketEvent::Rx;
      }
      else
      {
        event = PacketEvent::Lost;
      }
      in_flight.reset();
    }

    if (t < scoring_start)
    {
      continue;
    }

    if (!station)
    {
      // Bootstrap: the station starts from the drone's first report.
      if (auto report = make_report(config, box, drone.state()))
      {
        station = reset_from_report(report->second, model, config.noise);
      }
    }

    if (!in_flight && scheduler.can_transmit(t))
    {
      if (auto report = make_report(config, box, drone.state()))
      {
        Packet packet;
        packet.payload = std::move(report->first);
        packet.tx_start = t;
        packet.airtime = scheduler.record(t);
        packet.tx_position = truth.position();
        const double distance = (packet.tx_position - config.gw_position).norm();
        const double shadow_db =
            config.link.shadowing_sigma_db > 0.0 ? config.link.shadowing_sigma_db * shadowing(channel_rng) : 0.0;
        packet.delivered = link_delivered(distance, config.radio, config.link, shadow_db);
        in_flight.emplace(std::move(packet), report->second);
        if (event == PacketEvent::None)
        {
          event = PacketEvent::Tx;
        }
      }
    }

    if (station)
    {
      records.push_back(error_record(t, truth, station->state(), event));
    }
  }
  return records;
}

SweepKey sweep_key(const SimConfig& config)
{
  return {config.model, config.radio.sf, config.radio.bw_hz, config.distance};
}

std::uint64_t trace_seed(std::uint64_t base, std::size_t trace_index)
{
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trace_index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SweepResult run_sweep(const std::vector<SimConfig>& configs, const std::vector<TrajectoryTrace>& traces,
                      unsigned jobs)
{
  if (traces.empty())
  {
    throw ConfigError("a sweep needs at least one trace");
  }
  const std::size_t n_traces = traces.size();
  const std::size_t total = configs.size() * n_traces;

  SweepResult result;
  result.records.assign(configs.size(), std::vector<std::vector<ErrorRecord>>(n_traces));
  std::vector<std::exception_ptr> failures(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++)
    {
      const std::size_t c = job / n_traces;
      const std::size_t tr = job % n_traces;
      try
      {
        SimConfig cfg = configs[c];
        cfg.seed = trace_seed(configs[c].seed, tr);
        result.records[c][tr] = run(cfg, traces[tr]);
      }
      catch (...)
      {
        failures[job] = std::current_exception();
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (n_threads == 1)
  {
    worker();
  }
  else
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i)
    {
      pool.emplace_back(worker);
    }
  }
  for (const auto& failure : failures)
  {
    if (failure)
    {
      std::rethrow_exception(failure);
    }
  }

  result.rows.reserve(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c)
  {
    std::vector<ErrorRecord> pooled;
    for (const auto& records : result.records[c])
    {
      pooled.insert(pooled.end(), records.begin(), records.end());
    }
    result.rows.push_back({sweep_key(configs[c]), summarize(pooled)});
  }
  return result;
}

std::vector<SweepRow> compare(const std::vector<SimConfig>& configs, const std::vector<TrajectoryTrace>& traces,
                              unsigned jobs)
{
  return run_sweep(configs, traces, jobs).rows;
}

}  // namespace uavtrack
