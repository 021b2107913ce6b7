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

/* C interface to the uavtrack library.
 *
 * Every function returns a uavtrack_status. On failure a description of the
 * last error on the calling thread is available from uavtrack_last_error().
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Passing NULL to a *_free function is a no-op.
 */
#ifndef UAVTRACK_UAVTRACK_H
#define UAVTRACK_UAVTRACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(UAVTRACK_BUILDING_LIBRARY)
#define UAVTRACK_API __attribute__((visibility("default")))
#else
#define UAVTRACK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavtrack_status
{
  UAVTRACK_OK = 0,
  UAVTRACK_ERR_INVALID_ARGUMENT = 1,
  UAVTRACK_ERR_CONFIG = 2,
  UAVTRACK_ERR_PARSE = 3,
  UAVTRACK_ERR_RANGE = 4,
  UAVTRACK_ERR_FORMAT = 5,
  UAVTRACK_ERR_NUMERICAL = 6,
  UAVTRACK_ERR_IO = 7,
  UAVTRACK_ERR_INTERNAL = 8
} uavtrack_status;

typedef enum uavtrack_model
{
  UAVTRACK_MODEL_DR = 0,
  UAVTRACK_MODEL_CTRA_PLUS = 1,
  UAVTRACK_MODEL_CTRA_3D = 2
} uavtrack_model;

typedef enum uavtrack_trace_kind
{
  UAVTRACK_TRACE_LINE = 0,
  UAVTRACK_TRACE_CIRCLE = 1,
  UAVTRACK_TRACE_HELIX = 2,
  UAVTRACK_TRACE_CURVED_HELIX = 3
} uavtrack_trace_kind;

typedef struct uavtrack_state
{
  double x, y, z;
  double theta, phi;
  double v, a;
  double omega, psi;
} uavtrack_state;

typedef struct uavtrack_radio_config
{
  int sf;
  double bw_hz;
  int cr;
  int preamble_symbols;
  int explicit_header;
  int crc;
  int low_data_rate_optimize; /* -1 auto, 0 off, 1 on */
  double tx_power_dbm;
  double duty_cycle;
} uavtrack_radio_config;

typedef struct uavtrack_box
{
  double origin[3];
  double side;
} uavtrack_box;

typedef struct uavtrack_generator_params
{
  double rate_hz;
  double duration_s;
  double origin[3];
  double speed;
  double accel;
  double heading;
  double pitch;
  double radius;
  double climb_rate;
  double omega;
  double psi;
  double max_pitch;
} uavtrack_generator_params;

typedef struct uavtrack_axis_summary
{
  size_t count;
  double median, q1, q3;
  double whisker_low, whisker_high;
  double mean, p75, p95, max;
} uavtrack_axis_summary;

/* x, y, z are over absolute errors; norm over the 3D error. */
typedef struct uavtrack_summary
{
  uavtrack_axis_summary x, y, z, norm;
} uavtrack_summary;

typedef struct uavtrack_trace uavtrack_trace;
typedef struct uavtrack_experiment uavtrack_experiment;

UAVTRACK_API const char* uavtrack_version(void);
UAVTRACK_API const char* uavtrack_last_error(void);
UAVTRACK_API const char* uavtrack_status_string(uavtrack_status status);

UAVTRACK_API uavtrack_status uavtrack_parse_model(const char* name, uavtrack_model* out);
UAVTRACK_API size_t uavtrack_payload_size(uavtrack_model model);

/* --- radio ------------------------------------------------------------ */

UAVTRACK_API void uavtrack_radio_config_default(uavtrack_radio_config* out);
UAVTRACK_API uavtrack_status uavtrack_airtime(const uavtrack_radio_config* cfg, size_t payload_len,
                                              double* airtime_s, double* min_interval_s);
UAVTRACK_API uavtrack_status uavtrack_link_delivered(double distance_m, const uavtrack_radio_config* cfg,
                                                     int* delivered, double* received_dbm);

/* --- motion and codec -------------------------------------------------- */

UAVTRACK_API uavtrack_status uavtrack_propagate(uavtrack_model model, const uavtrack_state* in, double dt,
                                                uavtrack_state* out);
UAVTRACK_API void uavtrack_box_default(uavtrack_box* out);
/* `capacity` must be at least uavtrack_payload_size(model). */
UAVTRACK_API uavtrack_status uavtrack_encode_state(const uavtrack_state* state, uavtrack_model model,
                                                   const uavtrack_box* box, uint8_t* out, size_t capacity,
                                                   size_t* written);
UAVTRACK_API uavtrack_status uavtrack_decode_state(const uint8_t* payload, size_t len, uavtrack_model model,
                                                   const uavtrack_box* box, uavtrack_state* out);

/* --- traces ------------------------------------------------------------ */

UAVTRACK_API uavtrack_status uavtrack_parse_trace_kind(const char* name, uavtrack_trace_kind* out);
UAVTRACK_API void uavtrack_generator_params_default(uavtrack_generator_params* out);
UAVTRACK_API uavtrack_status uavtrack_trace_generate(uavtrack_trace_kind kind, const uavtrack_generator_params* params,
                                                     uavtrack_trace** out);
UAVTRACK_API uavtrack_status uavtrack_trace_load(const char* path, uavtrack_trace** out);
UAVTRACK_API uavtrack_status uavtrack_trace_write_csv(const uavtrack_trace* trace, const char* path);
UAVTRACK_API size_t uavtrack_trace_size(const uavtrack_trace* trace);
UAVTRACK_API uavtrack_status uavtrack_trace_state_at(const uavtrack_trace* trace, double t, uavtrack_state* out);
UAVTRACK_API void uavtrack_trace_free(uavtrack_trace* trace);

/* --- experiments ------------------------------------------------------- */

/* `overrides_json` may be NULL; otherwise it is merged over the spec. */
UAVTRACK_API uavtrack_status uavtrack_experiment_load(const char* spec_path, const char* overrides_json,
                                                      uavtrack_experiment** out);
UAVTRACK_API size_t uavtrack_experiment_combinations(const uavtrack_experiment* experiment);
/* Runs the sweep and writes its outputs. *files_written may be NULL. */
UAVTRACK_API uavtrack_status uavtrack_experiment_run(uavtrack_experiment* experiment, size_t* files_written);
/* Directory the outputs go to; valid while the handle lives. */
UAVTRACK_API const char* uavtrack_experiment_output_dir(const uavtrack_experiment* experiment);
UAVTRACK_API void uavtrack_experiment_free(uavtrack_experiment* experiment);

/* --- metrics ----------------------------------------------------------- */

/* Pools the records of `count` error CSV files and summarizes them. */
UAVTRACK_API uavtrack_status uavtrack_summarize_error_files(const char* const* paths, size_t count,
                                                            uavtrack_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* UAVTRACK_UAVTRACK_H */
