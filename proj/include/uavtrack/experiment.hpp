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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "uavtrack/sim.hpp"

namespace uavtrack
{

inline constexpr int kErrorCsvSchemaVersion = 1;
inline constexpr int kSummaryCsvSchemaVersion = 1;
inline constexpr int kManifestSchemaVersion = 1;

/// Declarative sweep: every (model, radio, distance) combination is run on
/// every trace.
struct ExperimentSpec
{
  std::filesystem::path source;  // spec file, for messages
  std::vector<std::string> trace_names;  // as written in the spec
  std::vector<std::filesystem::path> trace_paths;  // resolved
  std::vector<ModelKind> models;
  std::vector<RadioConfig> radios;
  std::vector<double> distances;
  std::filesystem::path output_dir;
  unsigned jobs = 1;
  SimConfig base;
  /// Canonical JSON of the effective spec, hashed into the manifest.
  std::string canonical;

  [[nodiscard]] std::vector<SimConfig> configs() const;
};

/// Parses a JSON spec. `overrides_json`, when non-empty, is merged over the
/// document (RFC 7386 merge patch) before validation. Relative paths are
/// resolved against `base_dir`. Throws ParseError / ConfigError naming the
/// file and the line or JSON path at fault.
[[nodiscard]] ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path& source,
                                                   const std::filesystem::path& base_dir,
                                                   std::string_view overrides_json = {});
[[nodiscard]] ExperimentSpec load_experiment_spec(const std::filesystem::path& path,
                                                  std::string_view overrides_json = {});

/// Runs the sweep and writes one error CSV per (combination, trace), a
/// summary CSV and a manifest. Returns the written paths in that order.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

void write_error_csv(std::ostream& out, const std::vector<ErrorRecord>& records);
[[nodiscard]] std::vector<ErrorRecord> read_error_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a64(std::string_view data);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace uavtrack
