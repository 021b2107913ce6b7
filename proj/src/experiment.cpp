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

#include "uavtrack/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "uavtrack/errors.hpp"

namespace uavtrack
{

namespace
{

using nlohmann::json;

std::string number(double value)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::size_t line_of(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
    }
  }
  return line;
}

// Reads optional members of `obj` into existing fields; unknown members are
// rejected so typos do not pass silently.
class Reader
{
public:
  Reader(const json& obj, std::string path, const std::filesystem::path& source)
    : obj_(obj), path_(std::move(path)), source_(source)
  {
    if (!obj_.is_object())
    {
      fail("expected an object");
    }
  }

  template <typename T>
  void get(const char* key, T& out)
  {
    seen_.push_back(key);
    const auto it = obj_.find(key);
    if (it == obj_.end())
    {
      return;
    }
    try
    {
      out = it->template get<T>();
    }
    catch (const json::exception&)
    {
      fail(std::string("member '") + key + "' has the wrong type");
    }
  }

  [[nodiscard]] const json* child(const char* key)
  {
    seen_.push_back(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const
  {
    for (const auto& item : obj_.items())
    {
      if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end())
      {
        fail("unknown member '" + item.key() + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const
  {
    throw ConfigError(source_.string() + ": " + (path_.empty() ? "/" : path_) + ": " + what);
  }

  [[nodiscard]] const std::string& path() const { return path_; }

private:
  const json& obj_;
  std::string path_;
  const std::filesystem::path& source_;
  std::vector<std::string> seen_;
};

RadioConfig parse_radio(const json& obj, const std::string& path, const std::filesystem::path& source)
{
  Reader r(obj, path, source);
  RadioConfig cfg;
  r.get("sf", cfg.sf);
  r.get("bw", cfg.bw_hz);
  r.get("cr", cfg.cr);
  r.get("preamble_symbols", cfg.preamble_symbols);
  r.get("explicit_header", cfg.explicit_header);
  r.get("crc", cfg.crc);
  r.get("tx_power_dbm", cfg.tx_power_dbm);
  r.get("duty_cycle", cfg.duty_cycle);
  std::string ldro = "auto";
  r.get("low_data_rate_optimize", ldro);
  if (ldro == "auto")
  {
    cfg.ldro = LowDataRateOptimize::Auto;
  }
  else if (ldro == "on")
  {
    cfg.ldro = LowDataRateOptimize::On;
  }
  else if (ldro == "off")
  {
    cfg.ldro = LowDataRateOptimize::Off;
  }
  else
  {
    r.fail("low_data_rate_optimize must be auto, on or off");
  }
  r.finish();
  try
  {
    cfg.validate();
  }
  catch (const ConfigError& e)
  {
    r.fail(e.what());
  }
  return cfg;
}

void parse_noise(const json& obj, NoiseConfig& noise, const std::filesystem::path& source)
{
  Reader r(obj, "/noise", source);
  r.get("q", noise.q);
  r.get("scale_q_by_dt", noise.scale_q_by_dt);
  if (const json* rj = r.child("r"))
  {
    Reader rr(*rj, "/noise/r", source);
    rr.get("x", noise.r.x);
    rr.get("y", noise.r.y);
    rr.get("z", noise.r.z);
    rr.get("v", noise.r.v);
    rr.get("a", noise.r.a);
    rr.get("theta", noise.r.theta);
    rr.get("phi", noise.r.phi);
    rr.get("omega", noise.r.omega);
    rr.get("psi", noise.r.psi);
    rr.finish();
  }
  r.finish();
}

void parse_link(const json& obj, LinkParams& link, const std::filesystem::path& source)
{
  Reader r(obj, "/link", source);
  r.get("path_loss_exponent", link.path_loss_exponent);
  r.get("ref_loss_db", link.ref_loss_db);
  r.get("shadowing_sigma_db", link.shadowing_sigma_db);
  r.get("sensitivity_125k_dbm", link.sensitivity_125k_dbm);
  r.get("bw250_offset_db", link.bw250_offset_db);
  r.get("force_delivery", link.force_delivery);
  r.finish();
}

void parse_sim(const json& obj, SimConfig& sim, const std::filesystem::path& source)
{
  Reader r(obj, "/sim", source);
  r.get("tick_dt", sim.tick_dt);
  r.get("eta", sim.eta);
  r.get("warmup_s", sim.warmup_s);
  r.get("quantize", sim.quantize);
  r.get("duty_cycle_window_s", sim.duty_cycle_window_s);
  std::array<double, 3> gw{sim.gw_position.x(), sim.gw_position.y(), sim.gw_position.z()};
  r.get("gw_position", gw);
  sim.gw_position = {gw[0], gw[1], gw[2]};
  r.get("box_side", sim.box.side);
  r.finish();
}

std::string file_tag(ModelKind model)
{
  switch (model)
  {
    case ModelKind::DR:
      return "dr";
    case ModelKind::CtraPlus:
      return "ctra-plus";
    case ModelKind::Ctra3D:
      return "3d-ctra";
  }
  return "model";
}

std::string hex64(std::uint64_t value)
{
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void write_stats(std::ostream& out, const AxisSummary& s)
{
  for (double value : {s.median, s.q1, s.q3, s.whisker_low, s.whisker_high, s.mean, s.p75, s.p95, s.max})
  {
    out << ',' << number(value);
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data)
{
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data)
  {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw ConfigError("cannot write " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
    {
      throw ConfigError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<SimConfig> ExperimentSpec::configs() const
{
  std::vector<SimConfig> out;
  for (ModelKind model : models)
  {
    for (const RadioConfig& radio : radios)
    {
      for (double d : distances)
      {
        SimConfig cfg = base;
        cfg.model = model;
        cfg.radio = radio;
        cfg.distance = d;
        out.push_back(cfg);
      }
    }
  }
  return out;
}

ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path& source,
                                     const std::filesystem::path& base_dir, std::string_view overrides_json)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::parse_error& e)
  {
    throw ParseError(source.string() + ": invalid JSON: " + e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!overrides_json.empty())
  {
    try
    {
      doc.merge_patch(json::parse(overrides_json));
    }
    catch (const json::parse_error& e)
    {
      throw ParseError(std::string("overrides: invalid JSON: ") + e.what(), 1);
    }
  }

  ExperimentSpec spec;
  spec.source = source;
  {
    // Where the files go and how many workers produce them does not change
    // any result, so neither is part of the hashed configuration.
    json hashed = doc;
    if (hashed.is_object())
    {
      hashed.erase("output_dir");
      hashed.erase("jobs");
    }
    spec.canonical = hashed.dump();
  }
  Reader r(doc, "", source);

  std::vector<std::string> traces;
  r.get("traces", traces);
  if (traces.empty())
  {
    r.fail("'traces' must list at least one trace file");
  }
  for (const auto& name : traces)
  {
    std::filesystem::path p(name);
    if (p.is_relative())
    {
      p = base_dir / p;
    }
    if (!std::filesystem::is_regular_file(p))
    {
      r.fail("trace file '" + name + "' does not exist");
    }
    spec.trace_names.push_back(name);
    spec.trace_paths.push_back(p);
  }

  std::vector<std::string> models;
  r.get("models", models);
  for (const auto& name : models)
  {
    try
    {
      spec.models.push_back(parse_model(name));
    }
    catch (const ConfigError& e)
    {
      r.fail(e.what());
    }
  }

  if (const json* radios = r.child("radios"))
  {
    if (!radios->is_array())
    {
      r.fail("'radios' must be an array");
    }
    for (std::size_t i = 0; i < radios->size(); ++i)
    {
      spec.radios.push_back(parse_radio((*radios)[i], "/radios/" + std::to_string(i), source));
    }
  }
  r.get("distances", spec.distances);
  for (double d : spec.distances)
  {
    if (!(d > 0.0))
    {
      r.fail("distances must be > 0");
    }
  }
  if (spec.models.empty() || spec.radios.empty() || spec.distances.empty())
  {
    r.fail("need at least one model, one radio and one distance");
  }

  r.get("seed", spec.base.seed);
  int jobs = 1;
  r.get("jobs", jobs);
  spec.jobs = static_cast<unsigned>(std::max(1, jobs));
  std::string output_dir = "uavtrack-out";
  r.get("output_dir", output_dir);
  spec.output_dir = std::filesystem::path(output_dir);
  if (spec.output_dir.is_relative())
  {
    spec.output_dir = base_dir / spec.output_dir;
  }

  if (const json* sim = r.child("sim"))
  {
    parse_sim(*sim, spec.base, source);
  }
  if (const json* noise = r.child("noise"))
  {
    parse_noise(*noise, spec.base.noise, source);
  }
  if (const json* link = r.child("link"))
  {
    parse_link(*link, spec.base.link, source);
  }
  if (const json* ukf = r.child("ukf"))
  {
    Reader u(*ukf, "/ukf", source);
    u.get("alpha", spec.base.ukf.alpha);
    u.get("beta", spec.base.ukf.beta);
    u.get("kappa", spec.base.ukf.kappa);
    u.finish();
  }
  r.finish();

  try
  {
    spec.base.validate();
  }
  catch (const ConfigError& e)
  {
    r.fail(e.what());
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path, std::string_view overrides_json)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ConfigError("cannot open experiment spec " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_spec(buffer.str(), path, path.parent_path(), overrides_json);
}

void write_error_csv(std::ostream& out, const std::vector<ErrorRecord>& records)
{
  out << "t,err_x,err_y,err_z,err_3d,event\n";
  for (const auto& r : records)
  {
    out << number(r.t) << ',' << number(r.err_x) << ',' << number(r.err_y) << ',' << number(r.err_z) << ','
        << number(r.err_3d) << ',' << packet_event_name(r.event) << '\n';
  }
}

std::vector<ErrorRecord> read_error_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line))
  {
    throw ParseError("missing error CSV header", 1);
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r')
  {
    line.pop_back();
  }
  if (line != "t,err_x,err_y,err_z,err_3d,event")
  {
    throw ParseError("unexpected error CSV header", line_no);
  }
  std::vector<ErrorRecord> records;
  while (std::getline(in, line))
  {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.empty())
    {
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view view(line);
    for (std::size_t start = 0;;)
    {
      const std::size_t comma = view.find(',', start);
      fields.push_back(view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos)
      {
        break;
      }
      start = comma + 1;
    }
    if (fields.size() != 6)
    {
      throw ParseError("expected 6 columns", line_no);
    }
    double values[5];
    for (int i = 0; i < 5; ++i)
    {
      const auto [ptr, ec] = std::from_chars(fields[i].data(), fields[i].data() + fields[i].size(), values[i]);
      if (ec != std::errc() || ptr != fields[i].data() + fields[i].size())
      {
        throw ParseError("malformed number '" + std::string(fields[i]) + "'", line_no);
      }
    }
    ErrorRecord r{values[0], values[1], values[2], values[3], values[4], PacketEvent::None};
    try
    {
      r.event = parse_packet_event(fields[5]);
    }
    catch (const ConfigError& e)
    {
      throw ParseError(e.what(), line_no);
    }
    records.push_back(r);
  }
  return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
  out << "model,sf,bw_hz,distance_m,records";
  for (const char* axis : {"x", "y", "z", "3d"})
  {
    for (const char* stat : {"median", "q1", "q3", "whisker_low", "whisker_high", "mean", "p75", "p95", "max"})
    {
      out << ',' << axis << '_' << stat;
    }
  }
  out << '\n';
  for (const auto& row : rows)
  {
    out << model_name(row.key.model) << ',' << row.key.sf << ',' << number(row.key.bw_hz) << ','
        << number(row.key.distance) << ',' << row.summary.norm.count;
    write_stats(out, row.summary.x);
    write_stats(out, row.summary.y);
    write_stats(out, row.summary.z);
    write_stats(out, row.summary.norm);
    out << '\n';
  }
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec)
{
  std::vector<TrajectoryTrace> traces;
  traces.reserve(spec.trace_paths.size());
  for (const auto& path : spec.trace_paths)
  {
    traces.push_back(derive_kinematics(load_trace(path)));
  }
  const std::vector<SimConfig> configs = spec.configs();
  const SweepResult result = run_sweep(configs, traces, spec.jobs);

  std::filesystem::create_directories(spec.output_dir);
  std::vector<std::filesystem::path> written;
  json files = json::array();

  for (std::size_t c = 0; c < configs.size(); ++c)
  {
    const SimConfig& cfg = configs[c];
    for (std::size_t tr = 0; tr < traces.size(); ++tr)
    {
      std::ostringstream name;
      name << "errors_" << c << '_' << file_tag(cfg.model) << "_sf" << cfg.radio.sf << "_bw"
           << static_cast<long long>(cfg.radio.bw_hz / 1000.0) << "k_d" << number(cfg.distance) << "_t" << tr << '_'
           << spec.trace_paths[tr].stem().string() << ".csv";
      std::ostringstream body;
      write_error_csv(body, result.records[c][tr]);
      const auto path = spec.output_dir / name.str();
      write_file_atomic(path, body.str());
      written.push_back(path);
      files.push_back({{"file", name.str()},
                       {"model", model_name(cfg.model)},
                       {"sf", cfg.radio.sf},
                       {"bw_hz", cfg.radio.bw_hz},
                       {"distance_m", cfg.distance},
                       {"trace", spec.trace_names[tr]},
                       {"seed", trace_seed(cfg.seed, tr)},
                       {"fnv1a64", hex64(fnv1a64(body.str()))}});
    }
  }

  std::ostringstream summary;
  write_summary_csv(summary, result.rows);
  const auto summary_path = spec.output_dir / "summary.csv";
  write_file_atomic(summary_path, summary.str());
  written.push_back(summary_path);

  json rows = json::array();
  for (const auto& row : result.rows)
  {
    auto axis = [](const AxisSummary& s) {
      return json{{"count", s.count}, {"median", s.median}, {"q1", s.q1},   {"q3", s.q3},
                  {"whisker_low", s.whisker_low}, {"whisker_high", s.whisker_high},
                  {"mean", s.mean}, {"p75", s.p75}, {"p95", s.p95}, {"max", s.max}};
    };
    rows.push_back({{"model", model_name(row.key.model)},
                    {"sf", row.key.sf},
                    {"bw_hz", row.key.bw_hz},
                    {"distance_m", row.key.distance},
                    {"x", axis(row.summary.x)},
                    {"y", axis(row.summary.y)},
                    {"z", axis(row.summary.z)},
                    {"3d", axis(row.summary.norm)}});
  }

  json manifest{{"schema_version", kManifestSchemaVersion},
                {"tool", "uavtrack"},
                {"version", UAVTRACK_VERSION},
                {"config_hash", hex64(fnv1a64(spec.canonical))},
                {"seed", spec.base.seed},
                {"spec", json::parse(spec.canonical)},
                {"csv_schemas", {{"errors", kErrorCsvSchemaVersion}, {"summary", kSummaryCsvSchemaVersion}}},
                {"error_files", files},
                {"summary_file", "summary.csv"},
                {"summary_fnv1a64", hex64(fnv1a64(summary.str()))},
                {"summary", rows}};
  const auto manifest_path = spec.output_dir / "manifest.json";
  write_file_atomic(manifest_path, manifest.dump(2) + "\n");
  written.push_back(manifest_path);
  return written;
}

}  // namespace uavtrack
