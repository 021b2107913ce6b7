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

#include "uavtrack/uavtrack.h"

#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "uavtrack/errors.hpp"
#include "uavtrack/experiment.hpp"
#include "uavtrack/generate.hpp"
#include "uavtrack/lora.hpp"
#include "uavtrack/motion.hpp"
#include "uavtrack/trajectory.hpp"

struct uavtrack_trace
{
  uavtrack::TrajectoryTrace trace;
};

struct uavtrack_experiment
{
  uavtrack::ExperimentSpec spec;
  std::string output_dir;
};

namespace
{

thread_local std::string g_last_error;

uavtrack_status fail(uavtrack_status status, const std::string& message)
{
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
uavtrack_status guarded(Fn&& fn)
{
  try
  {
    fn();
    g_last_error.clear();
    return UAVTRACK_OK;
  }
  catch (const uavtrack::ParseError& e)
  {
    return fail(UAVTRACK_ERR_PARSE, e.what());
  }
  catch (const uavtrack::ConfigError& e)
  {
    return fail(UAVTRACK_ERR_CONFIG, e.what());
  }
  catch (const uavtrack::RangeError& e)
  {
    return fail(UAVTRACK_ERR_RANGE, e.what());
  }
  catch (const uavtrack::FormatError& e)
  {
    return fail(UAVTRACK_ERR_FORMAT, e.what());
  }
  catch (const uavtrack::NumericalError& e)
  {
    return fail(UAVTRACK_ERR_NUMERICAL, e.what());
  }
  catch (const std::filesystem::filesystem_error& e)
  {
    return fail(UAVTRACK_ERR_IO, e.what());
  }
  catch (const std::bad_alloc&)
  {
    return fail(UAVTRACK_ERR_INTERNAL, "out of memory");
  }
  catch (const std::exception& e)
  {
    return fail(UAVTRACK_ERR_INTERNAL, e.what());
  }
  catch (...)
  {
    return fail(UAVTRACK_ERR_INTERNAL, "unknown error");
  }
}

bool valid_model(uavtrack_model model)
{
  return model == UAVTRACK_MODEL_DR || model == UAVTRACK_MODEL_CTRA_PLUS || model == UAVTRACK_MODEL_CTRA_3D;
}

uavtrack::ModelKind to_model(uavtrack_model model)
{
  switch (model)
  {
    case UAVTRACK_MODEL_DR:
      return uavtrack::ModelKind::DR;
    case UAVTRACK_MODEL_CTRA_PLUS:
      return uavtrack::ModelKind::CtraPlus;
    case UAVTRACK_MODEL_CTRA_3D:
      return uavtrack::ModelKind::Ctra3D;
  }
  return uavtrack::ModelKind::DR;
}

uavtrack::UavState to_state(const uavtrack_state& s)
{
  return {s.x, s.y, s.z, s.theta, s.phi, s.v, s.a, s.omega, s.psi};
}

uavtrack_state from_state(const uavtrack::UavState& s)
{
  return {s.x, s.y, s.z, s.theta, s.phi, s.v, s.a, s.omega, s.psi};
}

uavtrack::RadioConfig to_radio(const uavtrack_radio_config& c)
{
  uavtrack::RadioConfig r;
  r.sf = c.sf;
  r.bw_hz = c.bw_hz;
  r.cr = c.cr;
  r.preamble_symbols = c.preamble_symbols;
  r.explicit_header = c.explicit_header != 0;
  r.crc = c.crc != 0;
  r.ldro = c.low_data_rate_optimize < 0   ? uavtrack::LowDataRateOptimize::Auto
           : c.low_data_rate_optimize > 0 ? uavtrack::LowDataRateOptimize::On
                                          : uavtrack::LowDataRateOptimize::Off;
  r.tx_power_dbm = c.tx_power_dbm;
  r.duty_cycle = c.duty_cycle;
  return r;
}

uavtrack::EncodingBox to_box(const uavtrack_box* box)
{
  uavtrack::EncodingBox b;
  if (box != nullptr)
  {
    b.origin = {box->origin[0], box->origin[1], box->origin[2]};
    b.side = box->side;
  }
  b.validate();
  return b;
}

uavtrack_axis_summary from_axis(const uavtrack::AxisSummary& s)
{
  return {s.count, s.median, s.q1, s.q3, s.whisker_low, s.whisker_high, s.mean, s.p75, s.p95, s.max};
}

#define UAVTRACK_REQUIRE(cond, what)                       \
  do                                                       \
  {                                                        \
    if (!(cond))                                           \
    {                                                      \
      return fail(UAVTRACK_ERR_INVALID_ARGUMENT, (what));  \
    }                                                      \
  } while (0)

}  // namespace

extern "C" {

const char* uavtrack_version(void) { return UAVTRACK_VERSION; }

const char* uavtrack_last_error(void) { return g_last_error.c_str(); }

const char* uavtrack_status_string(uavtrack_status status)
{
  switch (status)
  {
    case UAVTRACK_OK: return "ok";
    case UAVTRACK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UAVTRACK_ERR_CONFIG: return "configuration error";
    case UAVTRACK_ERR_PARSE: return "parse error";
    case UAVTRACK_ERR_RANGE: return "range error";
    case UAVTRACK_ERR_FORMAT: return "format error";
    case UAVTRACK_ERR_NUMERICAL: return "numerical error";
    case UAVTRACK_ERR_IO: return "i/o error";
    case UAVTRACK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

uavtrack_status uavtrack_parse_model(const char* name, uavtrack_model* out)
{
  UAVTRACK_REQUIRE(name != nullptr && out != nullptr, "name and out must not be NULL");
  return guarded([&] {
    switch (uavtrack::parse_model(name))
    {
      case uavtrack::ModelKind::DR:
        *out = UAVTRACK_MODEL_DR;
        break;
      case uavtrack::ModelKind::CtraPlus:
        *out = UAVTRACK_MODEL_CTRA_PLUS;
        break;
      case uavtrack::ModelKind::Ctra3D:
        *out = UAVTRACK_MODEL_CTRA_3D;
        break;
    }
  });
}

size_t uavtrack_payload_size(uavtrack_model model)
{
  return valid_model(model) ? uavtrack::payload_size(to_model(model)) : 0;
}

void uavtrack_radio_config_default(uavtrack_radio_config* out)
{
  if (out == nullptr)
  {
    return;
  }
  const uavtrack::RadioConfig d;
  *out = {d.sf, d.bw_hz, d.cr, d.preamble_symbols, d.explicit_header ? 1 : 0, d.crc ? 1 : 0, -1, d.tx_power_dbm,
          d.duty_cycle};
}

uavtrack_status uavtrack_airtime(const uavtrack_radio_config* cfg, size_t payload_len, double* airtime_s,
                                 double* min_interval_s)
{
  UAVTRACK_REQUIRE(cfg != nullptr, "cfg must not be NULL");
  return guarded([&] {
    const uavtrack::RadioConfig radio = to_radio(*cfg);
    const double t = uavtrack::airtime(radio, payload_len);
    if (airtime_s != nullptr)
    {
      *airtime_s = t;
    }
    if (min_interval_s != nullptr)
    {
      *min_interval_s = uavtrack::min_interval(radio, payload_len);
    }
  });
}

uavtrack_status uavtrack_link_delivered(double distance_m, const uavtrack_radio_config* cfg, int* delivered,
                                        double* received_dbm)
{
  UAVTRACK_REQUIRE(cfg != nullptr, "cfg must not be NULL");
  UAVTRACK_REQUIRE(distance_m > 0.0, "distance must be > 0");
  return guarded([&] {
    const uavtrack::RadioConfig radio = to_radio(*cfg);
    const uavtrack::LinkParams link;
    if (delivered != nullptr)
    {
      *delivered = uavtrack::link_delivered(distance_m, radio, link) ? 1 : 0;
    }
    if (received_dbm != nullptr)
    {
      *received_dbm = uavtrack::received_power_dbm(distance_m, radio, link);
    }
  });
}

uavtrack_status uavtrack_propagate(uavtrack_model model, const uavtrack_state* in, double dt, uavtrack_state* out)
{
  UAVTRACK_REQUIRE(valid_model(model), "unknown model");
  UAVTRACK_REQUIRE(in != nullptr && out != nullptr, "state pointers must not be NULL");
  UAVTRACK_REQUIRE(dt >= 0.0, "dt must be >= 0");
  return guarded([&] { *out = from_state(uavtrack::propagate(to_model(model), to_state(*in), dt)); });
}

void uavtrack_box_default(uavtrack_box* out)
{
  if (out == nullptr)
  {
    return;
  }
  const uavtrack::EncodingBox b;
  *out = {{b.origin.x(), b.origin.y(), b.origin.z()}, b.side};
}

uavtrack_status uavtrack_encode_state(const uavtrack_state* state, uavtrack_model model, const uavtrack_box* box,
                                      uint8_t* out, size_t capacity, size_t* written)
{
  UAVTRACK_REQUIRE(valid_model(model), "unknown model");
  UAVTRACK_REQUIRE(state != nullptr && out != nullptr, "state and out must not be NULL");
  UAVTRACK_REQUIRE(capacity >= uavtrack::payload_size(to_model(model)), "output buffer too small");
  return guarded([&] {
    const auto bytes = uavtrack::encode_state(to_state(*state), to_model(model), to_box(box));
    std::copy(bytes.begin(), bytes.end(), out);
    if (written != nullptr)
    {
      *written = bytes.size();
    }
  });
}

uavtrack_status uavtrack_decode_state(const uint8_t* payload, size_t len, uavtrack_model model,
                                      const uavtrack_box* box, uavtrack_state* out)
{
  UAVTRACK_REQUIRE(valid_model(model), "unknown model");
  UAVTRACK_REQUIRE(payload != nullptr && out != nullptr, "payload and out must not be NULL");
  return guarded([&] {
    *out = from_state(uavtrack::decode_state(std::span<const std::uint8_t>(payload, len), to_model(model), to_box(box)));
  });
}

uavtrack_status uavtrack_parse_trace_kind(const char* name, uavtrack_trace_kind* out)
{
  UAVTRACK_REQUIRE(name != nullptr && out != nullptr, "name and out must not be NULL");
  return guarded([&] { *out = static_cast<uavtrack_trace_kind>(uavtrack::parse_trace_kind(name)); });
}

void uavtrack_generator_params_default(uavtrack_generator_params* out)
{
  if (out == nullptr)
  {
    return;
  }
  const uavtrack::GeneratorParams p;
  *out = {p.rate_hz, p.duration_s, {p.origin.x(), p.origin.y(), p.origin.z()}, p.speed, p.accel, p.heading, p.pitch,
          p.radius, p.climb_rate, p.omega, p.psi, p.max_pitch};
}

uavtrack_status uavtrack_trace_generate(uavtrack_trace_kind kind, const uavtrack_generator_params* params,
                                        uavtrack_trace** out)
{
  UAVTRACK_REQUIRE(params != nullptr && out != nullptr, "params and out must not be NULL");
  UAVTRACK_REQUIRE(kind >= UAVTRACK_TRACE_LINE && kind <= UAVTRACK_TRACE_CURVED_HELIX, "unknown trace kind");
  *out = nullptr;
  return guarded([&] {
    uavtrack::GeneratorParams p;
    p.rate_hz = params->rate_hz;
    p.duration_s = params->duration_s;
    p.origin = {params->origin[0], params->origin[1], params->origin[2]};
    p.speed = params->speed;
    p.accel = params->accel;
    p.heading = params->heading;
    p.pitch = params->pitch;
    p.radius = params->radius;
    p.climb_rate = params->climb_rate;
    p.omega = params->omega;
    p.psi = params->psi;
    p.max_pitch = params->max_pitch;
    auto handle = std::make_unique<uavtrack_trace>();
    handle->trace = uavtrack::generate_trace(static_cast<uavtrack::TraceKind>(kind), p);
    *out = handle.release();
  });
}

uavtrack_status uavtrack_trace_load(const char* path, uavtrack_trace** out)
{
  UAVTRACK_REQUIRE(path != nullptr && out != nullptr, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<uavtrack_trace>();
    handle->trace = uavtrack::derive_kinematics(uavtrack::load_trace(path));
    *out = handle.release();
  });
}

uavtrack_status uavtrack_trace_write_csv(const uavtrack_trace* trace, const char* path)
{
  UAVTRACK_REQUIRE(trace != nullptr && path != nullptr, "trace and path must not be NULL");
  return guarded([&] {
    std::ostringstream body;
    uavtrack::write_trace_csv(body, trace->trace);
    uavtrack::write_file_atomic(path, body.str());
  });
}

size_t uavtrack_trace_size(const uavtrack_trace* trace) { return trace == nullptr ? 0 : trace->trace.size(); }

uavtrack_status uavtrack_trace_state_at(const uavtrack_trace* trace, double t, uavtrack_state* out)
{
  UAVTRACK_REQUIRE(trace != nullptr && out != nullptr, "trace and out must not be NULL");
  return guarded([&] { *out = from_state(uavtrack::state_at(trace->trace, t)); });
}

void uavtrack_trace_free(uavtrack_trace* trace) { delete trace; }

uavtrack_status uavtrack_experiment_load(const char* spec_path, const char* overrides_json, uavtrack_experiment** out)
{
  UAVTRACK_REQUIRE(spec_path != nullptr && out != nullptr, "spec_path and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<uavtrack_experiment>();
    handle->spec = uavtrack::load_experiment_spec(spec_path, overrides_json == nullptr ? "" : overrides_json);
    handle->output_dir = handle->spec.output_dir.string();
    *out = handle.release();
  });
}

size_t uavtrack_experiment_combinations(const uavtrack_experiment* experiment)
{
  return experiment == nullptr ? 0 : experiment->spec.configs().size();
}

uavtrack_status uavtrack_experiment_run(uavtrack_experiment* experiment, size_t* files_written)
{
  UAVTRACK_REQUIRE(experiment != nullptr, "experiment must not be NULL");
  return guarded([&] {
    const auto files = uavtrack::run_experiment(experiment->spec);
    if (files_written != nullptr)
    {
      *files_written = files.size();
    }
  });
}

const char* uavtrack_experiment_output_dir(const uavtrack_experiment* experiment)
{
  return experiment == nullptr ? "" : experiment->output_dir.c_str();
}

void uavtrack_experiment_free(uavtrack_experiment* experiment) { delete experiment; }

uavtrack_status uavtrack_summarize_error_files(const char* const* paths, size_t count, uavtrack_summary* out)
{
  UAVTRACK_REQUIRE(paths != nullptr && out != nullptr, "paths and out must not be NULL");
  UAVTRACK_REQUIRE(count > 0, "need at least one file");
  return guarded([&] {
    std::vector<uavtrack::ErrorRecord> pooled;
    for (size_t i = 0; i < count; ++i)
    {
      std::ifstream in(paths[i]);
      if (!in)
      {
        throw uavtrack::ConfigError(std::string("cannot open ") + paths[i]);
      }
      try
      {
        const auto records = uavtrack::read_error_csv(in);
        pooled.insert(pooled.end(), records.begin(), records.end());
      }
      catch (const uavtrack::ParseError& e)
      {
        throw uavtrack::ParseError(std::string(paths[i]) + ": " + e.message(), e.line());
      }
    }
    const auto summary = uavtrack::summarize(pooled);
    *out = {from_axis(summary.x), from_axis(summary.y), from_axis(summary.z), from_axis(summary.norm)};
  });
}

}  // extern "C"
