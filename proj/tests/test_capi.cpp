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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "uavtrack/uavtrack.h"

namespace
{

namespace fs = std::filesystem;

TEST(CApi, VersionAndStatus)
{
  EXPECT_STRNE(uavtrack_version(), "");
  EXPECT_STREQ(uavtrack_status_string(UAVTRACK_OK), "ok");
  uavtrack_model m{};
  EXPECT_EQ(uavtrack_parse_model("3D-CTRA", &m), UAVTRACK_OK);
  EXPECT_EQ(m, UAVTRACK_MODEL_CTRA_3D);
  EXPECT_EQ(uavtrack_parse_model("nope", &m), UAVTRACK_ERR_CONFIG);
  EXPECT_NE(std::string(uavtrack_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(uavtrack_parse_model(nullptr, &m), UAVTRACK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(uavtrack_payload_size(UAVTRACK_MODEL_DR), 9u);
  EXPECT_EQ(uavtrack_payload_size(UAVTRACK_MODEL_CTRA_PLUS), 11u);
  EXPECT_EQ(uavtrack_payload_size(UAVTRACK_MODEL_CTRA_3D), 12u);
}

TEST(CApi, Airtime)
{
  uavtrack_radio_config cfg;
  uavtrack_radio_config_default(&cfg);
  cfg.sf = 7;
  cfg.bw_hz = 250000;
  double t = 0;
  double interval = 0;
  ASSERT_EQ(uavtrack_airtime(&cfg, 12, &t, &interval), UAVTRACK_OK);
  EXPECT_NEAR(t, 0.0206, 1e-4);
  EXPECT_NEAR(interval, 2.06, 0.005);
  cfg.sf = 6;
  EXPECT_EQ(uavtrack_airtime(&cfg, 12, &t, &interval), UAVTRACK_ERR_CONFIG);
}

TEST(CApi, Link)
{
  uavtrack_radio_config cfg;
  uavtrack_radio_config_default(&cfg);
  cfg.bw_hz = 250000;
  int delivered = -1;
  double dbm = 0;
  ASSERT_EQ(uavtrack_link_delivered(2000, &cfg, &delivered, &dbm), UAVTRACK_OK);
  EXPECT_EQ(delivered, 1);
  ASSERT_EQ(uavtrack_link_delivered(3000, &cfg, &delivered, &dbm), UAVTRACK_OK);
  EXPECT_EQ(delivered, 0);
  EXPECT_EQ(uavtrack_link_delivered(0, &cfg, &delivered, &dbm), UAVTRACK_ERR_INVALID_ARGUMENT);
}

TEST(CApi, PropagateAndCodec)
{
  const uavtrack_state s{10, 20, 30, 0.1, 0.2, 5, 0.5, 0.3, 0.1};
  uavtrack_state out{};
  ASSERT_EQ(uavtrack_propagate(UAVTRACK_MODEL_DR, &s, 1.0, &out), UAVTRACK_OK);
  EXPECT_NEAR(out.x, 10 + 5 * std::cos(0.2) * std::cos(0.1), 1e-12);
  EXPECT_EQ(uavtrack_propagate(UAVTRACK_MODEL_DR, &s, -1.0, &out), UAVTRACK_ERR_INVALID_ARGUMENT);

  uavtrack_box box;
  uavtrack_box_default(&box);
  EXPECT_EQ(box.side, 13000.0);
  uint8_t bytes[12];
  size_t written = 0;
  ASSERT_EQ(uavtrack_encode_state(&s, UAVTRACK_MODEL_CTRA_3D, &box, bytes, sizeof bytes, &written), UAVTRACK_OK);
  EXPECT_EQ(written, 12u);
  uavtrack_state back{};
  ASSERT_EQ(uavtrack_decode_state(bytes, written, UAVTRACK_MODEL_CTRA_3D, &box, &back), UAVTRACK_OK);
  EXPECT_NEAR(back.x, s.x, 0.0992);
  EXPECT_EQ(uavtrack_decode_state(bytes, 11, UAVTRACK_MODEL_CTRA_3D, &box, &back), UAVTRACK_ERR_FORMAT);
  EXPECT_EQ(uavtrack_encode_state(&s, UAVTRACK_MODEL_CTRA_3D, &box, bytes, 11, &written),
            UAVTRACK_ERR_INVALID_ARGUMENT);
  uavtrack_state far = s;
  far.x = -5;
  EXPECT_EQ(uavtrack_encode_state(&far, UAVTRACK_MODEL_DR, &box, bytes, sizeof bytes, &written), UAVTRACK_ERR_RANGE);
}

TEST(CApi, TraceLifecycle)
{
  uavtrack_generator_params p;
  uavtrack_generator_params_default(&p);
  p.radius = 10;
  p.speed = 5;
  uavtrack_trace* trace = nullptr;
  ASSERT_EQ(uavtrack_trace_generate(UAVTRACK_TRACE_CIRCLE, &p, &trace), UAVTRACK_OK);
  EXPECT_EQ(uavtrack_trace_size(trace), 3001u);
  uavtrack_state s{};
  ASSERT_EQ(uavtrack_trace_state_at(trace, 1.0, &s), UAVTRACK_OK);
  EXPECT_NEAR(s.omega, 0.5, 1e-3);
  EXPECT_EQ(uavtrack_trace_state_at(trace, 100.0, &s), UAVTRACK_ERR_RANGE);

  const fs::path path = fs::temp_directory_path() / "uavtrack_capi_trace.csv";
  ASSERT_EQ(uavtrack_trace_write_csv(trace, path.c_str()), UAVTRACK_OK);
  uavtrack_trace_free(trace);

  uavtrack_trace* loaded = nullptr;
  ASSERT_EQ(uavtrack_trace_load(path.c_str(), &loaded), UAVTRACK_OK);
  EXPECT_EQ(uavtrack_trace_size(loaded), 3001u);
  uavtrack_trace_free(loaded);
  fs::remove(path);

  EXPECT_EQ(uavtrack_trace_load("/nonexistent/trace.csv", &loaded), UAVTRACK_ERR_CONFIG);
  EXPECT_EQ(loaded, nullptr);
  p.rate_hz = -1;
  EXPECT_EQ(uavtrack_trace_generate(UAVTRACK_TRACE_LINE, &p, &trace), UAVTRACK_ERR_CONFIG);
}

TEST(CApi, ExperimentAndMetrics)
{
  const fs::path dir = fs::temp_directory_path() / "uavtrack_capi_experiment";
  fs::remove_all(dir);
  fs::create_directories(dir);
  uavtrack_generator_params p;
  uavtrack_generator_params_default(&p);
  p.duration_s = 5;
  uavtrack_trace* trace = nullptr;
  ASSERT_EQ(uavtrack_trace_generate(UAVTRACK_TRACE_LINE, &p, &trace), UAVTRACK_OK);
  ASSERT_EQ(uavtrack_trace_write_csv(trace, (dir / "line.csv").c_str()), UAVTRACK_OK);
  uavtrack_trace_free(trace);
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"traces": ["line.csv"], "models": ["DR", "3D-CTRA"], "radios": [{"sf": 7, "bw": 250000}],
                "distances": [1000]})";
  }
  uavtrack_experiment* exp = nullptr;
  ASSERT_EQ(uavtrack_experiment_load((dir / "spec.json").c_str(), R"({"output_dir": "out"})", &exp), UAVTRACK_OK)
      << uavtrack_last_error();
  EXPECT_EQ(uavtrack_experiment_combinations(exp), 2u);
  size_t written = 0;
  ASSERT_EQ(uavtrack_experiment_run(exp, &written), UAVTRACK_OK) << uavtrack_last_error();
  EXPECT_EQ(written, 4u);
  EXPECT_EQ(fs::path(uavtrack_experiment_output_dir(exp)), dir / "out");
  uavtrack_experiment_free(exp);

  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir / "out"))
  {
    if (e.path().filename().string().rfind("errors_", 0) == 0)
    {
      files.push_back(e.path().string());
    }
  }
  ASSERT_EQ(files.size(), 2u);
  std::vector<const char*> paths{files[0].c_str(), files[1].c_str()};
  uavtrack_summary summary{};
  ASSERT_EQ(uavtrack_summarize_error_files(paths.data(), paths.size(), &summary), UAVTRACK_OK);
  EXPECT_EQ(summary.norm.count, 2u * 401u);
  EXPECT_LE(summary.norm.q1, summary.norm.median);
  EXPECT_EQ(uavtrack_summarize_error_files(paths.data(), 0, &summary), UAVTRACK_ERR_INVALID_ARGUMENT);

  EXPECT_EQ(uavtrack_experiment_load((dir / "missing.json").c_str(), nullptr, &exp), UAVTRACK_ERR_CONFIG);
  fs::remove_all(dir);
}

}  // namespace
