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

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavtrack/uavtrack.h"

namespace
{

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

// Thrown for failures reported by the library; mapped to exit code 2.
struct RuntimeFailure
{
  std::string message;
};

void check(uavtrack_status status)
{
  if (status == UAVTRACK_OK)
  {
    return;
  }
  std::string message = uavtrack_last_error();
  if (message.empty())
  {
    message = uavtrack_status_string(status);
  }
  if (status == UAVTRACK_ERR_INVALID_ARGUMENT)
  {
    throw CLI::ValidationError(message);
  }
  throw RuntimeFailure{message};
}

std::string absolute_string(const std::string& path)
{
  return std::filesystem::absolute(path).lexically_normal().string();
}

struct AirtimeArgs
{
  int sf = 7;
  double bw = 125000.0;
  std::vector<std::size_t> lengths;
  int cr = 1;
  int preamble = 8;
  double duty_cycle = 0.01;
};

void cmd_airtime(const AirtimeArgs& args)
{
  uavtrack_radio_config cfg;
  uavtrack_radio_config_default(&cfg);
  cfg.sf = args.sf;
  cfg.bw_hz = args.bw;
  cfg.cr = args.cr;
  cfg.preamble_symbols = args.preamble;
  cfg.duty_cycle = args.duty_cycle;

  std::printf("%-4s %-8s %-5s %-11s %s\n", "sf", "bw_hz", "len", "airtime_s", "min_interval_s");
  for (const std::size_t len : args.lengths)
  {
    double airtime = 0.0;
    double interval = 0.0;
    check(uavtrack_airtime(&cfg, len, &airtime, &interval));
    std::printf("%-4d %-8.0f %-5zu %-11.6f %.6f\n", cfg.sf, cfg.bw_hz, len, airtime, interval);
  }
}

struct RunArgs
{
  std::string spec;
  std::string out;
  unsigned jobs = 0;
  std::int64_t seed = -1;
  std::vector<std::string> models;
  std::vector<double> distances;
  int quantize = -1;
};

// Flags become a merge patch applied over the spec document.
std::string run_overrides(const RunArgs& args)
{
  nlohmann::json patch = nlohmann::json::object();
  if (!args.out.empty())
  {
    patch["output_dir"] = absolute_string(args.out);
  }
  else if (const char* env = std::getenv("UAVTRACK_OUTPUT_DIR"); env != nullptr && *env != '\0')
  {
    // Only a default: an explicit output_dir in the spec wins.
    std::ifstream in(args.spec);
    const auto doc = nlohmann::json::parse(in, nullptr, false);
    if (!doc.is_object() || !doc.contains("output_dir"))
    {
      patch["output_dir"] = absolute_string(env);
    }
  }
  if (args.jobs > 0)
  {
    patch["jobs"] = args.jobs;
  }
  if (args.seed >= 0)
  {
    patch["seed"] = args.seed;
  }
  if (!args.models.empty())
  {
    patch["models"] = args.models;
  }
  if (!args.distances.empty())
  {
    patch["distances"] = args.distances;
  }
  if (args.quantize >= 0)
  {
    patch["sim"]["quantize"] = args.quantize != 0;
  }
  return patch.empty() ? std::string() : patch.dump();
}

void cmd_run(const RunArgs& args)
{
  const std::string overrides = run_overrides(args);
  uavtrack_experiment* experiment = nullptr;
  check(uavtrack_experiment_load(args.spec.c_str(), overrides.empty() ? nullptr : overrides.c_str(), &experiment));
  std::unique_ptr<uavtrack_experiment, decltype(&uavtrack_experiment_free)> guard(experiment,
                                                                                   &uavtrack_experiment_free);
  const std::size_t combinations = uavtrack_experiment_combinations(experiment);
  std::size_t written = 0;
  check(uavtrack_experiment_run(experiment, &written));
  std::printf("%zu combinations, %zu files written to %s\n", combinations, written,
              uavtrack_experiment_output_dir(experiment));
}

struct GenArgs
{
  std::string kind;
  std::string out;
  uavtrack_generator_params params{};
  std::array<double, 3> origin{};
};

void cmd_gen(const GenArgs& args)
{
  uavtrack_generator_params params = args.params;
  std::copy(args.origin.begin(), args.origin.end(), params.origin);
  uavtrack_trace_kind kind{};
  check(uavtrack_parse_trace_kind(args.kind.c_str(), &kind));
  uavtrack_trace* trace = nullptr;
  check(uavtrack_trace_generate(kind, &params, &trace));
  std::unique_ptr<uavtrack_trace, decltype(&uavtrack_trace_free)> guard(trace, &uavtrack_trace_free);
  check(uavtrack_trace_write_csv(trace, args.out.c_str()));
  std::printf("%zu samples written to %s\n", uavtrack_trace_size(trace), args.out.c_str());
}

struct MetricsArgs
{
  std::vector<std::string> files;
  std::string out;
};

void cmd_metrics(const MetricsArgs& args)
{
  std::vector<const char*> paths;
  paths.reserve(args.files.size());
  for (const auto& f : args.files)
  {
    paths.push_back(f.c_str());
  }
  uavtrack_summary summary{};
  check(uavtrack_summarize_error_files(paths.data(), paths.size(), &summary));

  std::ostringstream csv;
  csv << "axis,count,median,q1,q3,whisker_low,whisker_high,mean,p75,p95,max\n";
  csv.precision(17);
  const std::pair<const char*, const uavtrack_axis_summary*> axes[] = {
    {"x", &summary.x}, {"y", &summary.y}, {"z", &summary.z}, {"3d", &summary.norm}};
  for (const auto& [name, s] : axes)
  {
    csv << name << ',' << s->count << ',' << s->median << ',' << s->q1 << ',' << s->q3 << ',' << s->whisker_low
        << ',' << s->whisker_high << ',' << s->mean << ',' << s->p75 << ',' << s->p95 << ',' << s->max << '\n';
  }
  if (args.out.empty())
  {
    std::cout << csv.str();
    return;
  }
  std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
  file << csv.str();
  if (!file)
  {
    throw RuntimeFailure{"cannot write " + args.out};
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"UAV position tracking over LoRa"};
  app.set_version_flag("--version", std::string(uavtrack_version()));
  app.require_subcommand(1);

  AirtimeArgs airtime;
  auto* airtime_cmd = app.add_subcommand("airtime", "Time on air and duty-cycle interval for a payload");
  airtime_cmd->add_option("--sf", airtime.sf, "Spreading factor")->required()->check(CLI::Range(7, 12));
  airtime_cmd->add_option("--bw", airtime.bw, "Bandwidth in Hz")
    ->required()
    ->check(CLI::IsMember({125000.0, 250000.0}));
  airtime_cmd->add_option("--len", airtime.lengths, "Payload length(s) in bytes")
    ->required()
    ->check(CLI::Range(std::size_t{1}, std::size_t{255}));
  airtime_cmd->add_option("--cr", airtime.cr, "Coding rate index (1 = 4/5)")->check(CLI::Range(1, 4));
  airtime_cmd->add_option("--preamble", airtime.preamble, "Preamble symbols")->check(CLI::NonNegativeNumber);
  airtime_cmd->add_option("--dc", airtime.duty_cycle, "Duty cycle fraction")->check(CLI::Range(1e-6, 1.0));

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment spec");
  run_cmd->add_option("spec", run.spec, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Output directory (default: $UAVTRACK_OUTPUT_DIR or the spec)");
  run_cmd->add_option("--jobs", run.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Base seed")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--model", run.models, "Models to run (DR, CTRA+, 3D-CTRA)");
  run_cmd->add_option("--distance", run.distances, "Gateway distances in metres")->check(CLI::PositiveNumber);
  run_cmd->add_option("--quantize", run.quantize, "Quantize reports (0 or 1)")->check(CLI::Range(0, 1));

  GenArgs gen;
  uavtrack_generator_params_default(&gen.params);
  auto* gen_cmd = app.add_subcommand("gen", "Generate an analytic trajectory CSV");
  gen_cmd->add_option("kind", gen.kind, "line, circle, helix or curved-helix")->required();
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();
  gen_cmd->add_option("--rate", gen.params.rate_hz, "Sample rate in Hz");
  gen_cmd->add_option("--duration", gen.params.duration_s, "Duration in seconds");
  gen_cmd->add_option("--speed", gen.params.speed, "Speed in m/s");
  gen_cmd->add_option("--accel", gen.params.accel, "Tangential acceleration (line)");
  gen_cmd->add_option("--heading", gen.params.heading, "Initial heading in rad");
  gen_cmd->add_option("--pitch", gen.params.pitch, "Initial pitch in rad");
  gen_cmd->add_option("--radius", gen.params.radius, "Radius in m (circle, helix)");
  gen_cmd->add_option("--climb", gen.params.climb_rate, "Climb rate in m/s (helix)");
  gen_cmd->add_option("--omega", gen.params.omega, "Yaw rate in rad/s (curved-helix)");
  gen_cmd->add_option("--psi", gen.params.psi, "Pitch rate in rad/s (curved-helix)");
  gen_cmd->add_option("--max-pitch", gen.params.max_pitch, "Pitch amplitude in rad (curved-helix)");
  gen_cmd->add_option("--origin", gen.origin, "Start position x y z")->expected(3);

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Summarize error CSVs");
  metrics_cmd->add_option("files", metrics.files, "Error CSV files")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--out", metrics.out, "Write the summary CSV here instead of stdout");

  try
  {
    app.parse(argc, argv);
    if (airtime_cmd->parsed())
    {
      cmd_airtime(airtime);
    }
    else if (run_cmd->parsed())
    {
      cmd_run(run);
    }
    else if (gen_cmd->parsed())
    {
      cmd_gen(gen);
    }
    else if (metrics_cmd->parsed())
    {
      cmd_metrics(metrics);
    }
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  catch (const RuntimeFailure& e)
  {
    std::cerr << "error: " << e.message << '\n';
    return kExitRuntime;
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
