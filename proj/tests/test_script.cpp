// Copyright 2026 The cgaskin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cgaskin/errors.hpp"
#include "cgaskin/fixtures.hpp"
#include "cgaskin/script.hpp"
#include "test_util.hpp"

namespace cgaskin {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kScripts = fs::path(CGASKIN_DATA_DIR) / "scripts";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cgaskin_script_" + name);
  fs::remove_all(dir);
  return dir;
}

RunOptions options_for(const fs::path& dir) {
  RunOptions o;
  o.out_dir = dir;
  return o;
}

// Checks the documented metrics layout.
void check_metrics_schema(const json& m) {
  ASSERT_TRUE(m.is_object());
  EXPECT_EQ(m.at("metrics_version"), kMetricsVersion);
  const std::string status = m.at("status");
  EXPECT_TRUE(status == "ok" || status == "error");
  EXPECT_TRUE(m.at("seed").is_number_unsigned());
  EXPECT_TRUE(m.at("backend").is_string());
  EXPECT_TRUE(m.at("accelerate").is_boolean());
  ASSERT_TRUE(m.at("actions").is_array());
  for (std::size_t i = 0; i < m["actions"].size(); ++i) {
    const json& a = m["actions"][i];
    EXPECT_EQ(a.at("index"), i);
    EXPECT_TRUE(a.at("wall_ms").is_number());
    const std::string type = a.at("type");
    if (type == "cut") {
      for (const char* k : {"intersection_points", "cut_faces", "chains", "closed_chains", "m1", "m2"}) {
        EXPECT_TRUE(a.contains(k)) << k;
      }
    } else if (type == "tear") {
      for (const char* k : {"intersection_points", "duplicated_vertices", "delta", "steps"}) {
        EXPECT_TRUE(a.contains(k)) << k;
      }
    } else if (type == "compare") {
      for (const char* k : {"linf", "mean", "worst_vertex", "reference", "test"}) {
        EXPECT_TRUE(a.contains(k)) << k;
      }
    } else if (type == "sample") {
      EXPECT_TRUE(a.at("frames").is_array());
    } else if (type == "bench") {
      EXPECT_TRUE(a.at("timings").is_object());
    }
  }
  if (status == "error") {
    EXPECT_TRUE(m.at("error").at("code").is_string());
    EXPECT_TRUE(m.at("error").at("message").is_string());
    EXPECT_TRUE(m.at("error").contains("action"));
  } else {
    EXPECT_FALSE(m.contains("error"));
  }
}

// Metrics with the timing fields removed.
json stable_metrics(json m) {
  for (json& a : m["actions"]) {
    a.erase("wall_ms");
    a.erase("timings");
  }
  return m;
}

TEST(Script, ParseAndSerializeRoundTrip) {
  for (const auto& entry : fs::directory_iterator(kScripts)) {
    const Script s = load_script_file(entry.path());
    const std::string text = serialize_script(s);
    EXPECT_EQ(serialize_script(parse_script(text)), text) << entry.path();
  }
}

TEST(Script, AxisAngleMatchesQuaternion) {
  const Script s = parse_script(R"({"script_version": 1, "actions": [
    {"type": "set_keyframe", "bone": 1, "time": 0,
     "trs": {"axis": [0, 0, 2], "angle": 0.5}}]})");
  const auto& a = std::get<SetKeyframeAction>(s.actions[0]);
  EXPECT_NEAR(a.trs.rotation.angularDistance(Quat(Eigen::AngleAxisd(0.5, Vec3::UnitZ()))), 0.0,
              1e-15);
  EXPECT_TRUE(a.relative_to_bind);
  EXPECT_EQ(a.clip, "default");
}

TEST(Script, SchemaErrors) {
  const char* bad[] = {
      "[]",
      R"({"actions": []})",
      R"({"script_version": 2, "actions": []})",
      R"({"script_version": 1, "actions": [{"type": "explode"}]})",
      R"({"script_version": 1, "actions": [{"type": "cut"}]})",
      R"({"script_version": 1, "actions": [{"type": "cut", "plane": {"normal": [1, 0, 0], "d": 0}, "keep": "left"}]})",
      R"({"script_version": 1, "actions": [{"type": "sample", "times": [1], "colour": 3}]})",
      R"({"script_version": 1, "actions": [{"type": "sample", "times": [1], "backend": "fast"}]})",
      R"({"script_version": 1, "actions": [{"type": "set_keyframe", "bone": 1.5, "time": 0, "trs": {}}]})",
      R"({"script_version": 1, "actions": [{"type": "set_keyframe", "bone": 1, "time": 0, "trs": {"rotation_quat": [1, 0, 0, 0], "angle": 1}}]})",
  };
  for (const char* doc : bad) EXPECT_THROW(parse_script(doc), SchemaError) << doc;
}

TEST(Script, ValidationIsFailFast) {
  const RiggedModel m = make_cylinders_fixture();
  auto invalid = [&](const char* doc) {
    EXPECT_THROW(validate_script(parse_script(doc), m), ParameterError) << doc;
  };
  invalid(R"({"script_version": 1, "actions": [{"type": "sample", "times": [1]}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "set_keyframe", "bone": 0, "time": 0, "trs": {}}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "set_keyframe", "bone": 9, "time": 0, "trs": {}}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "set_keyframe", "bone": 1, "time": 0, "trs": {"scale": 0}}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "tear", "scalpel": [{"t": 0, "tip": [0, 0, 0], "tail": [1, 0, 0]}]}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "tear", "delta": -1, "scalpel": [
    {"t": 0, "tip": [0, 0, 0], "tail": [1, 0, 0]}, {"t": 1, "tip": [0, 1, 0], "tail": [1, 1, 0]}]}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "export", "file": "../x.obj"}]})");
  invalid(R"({"script_version": 1, "actions": [{"type": "bench", "repeat": 0}]})");
  EXPECT_NO_THROW(validate_script(parse_script(R"({"script_version": 1, "actions": [
    {"type": "set_keyframe", "clip": "c", "bone": 2, "time": 0, "trs": {}},
    {"type": "sample", "clip": "c", "times": [0]}]})"), m));

  // A late invalid action stops the run before anything executes.
  const fs::path dir = fresh_dir("failfast");
  const Script s = parse_script(R"({"script_version": 1, "actions": [
    {"type": "export", "file": "first.obj"},
    {"type": "sample", "clip": "nothing", "times": [0]}]})");
  const RunReport r = run_script(s, m, options_for(dir));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_FALSE(fs::exists(dir / "first.obj"));
  const json metrics = json::parse(testing::read_file((dir / "metrics.json").string()));
  check_metrics_schema(metrics);
  EXPECT_EQ(metrics["error"]["code"], "ParameterError");
  fs::remove_all(dir);
}

TEST(Script, EmptyScriptExportsBindPose) {
  const fs::path dir = fresh_dir("empty");
  const RiggedModel m = make_cylinders_fixture();
  const RunReport r = run(std::string("fixture:cylinders"), kScripts / "empty.json", options_for(dir));
  EXPECT_EQ(r.exit_code, 0);
  const Mesh frame = testing::read_obj((dir / "frame_0000.obj").string());
  EXPECT_EQ(frame.faces, m.mesh.faces);
  for (int v = 0; v < m.mesh.vertex_count(); ++v) {
    EXPECT_LT((frame.vertices[v] - m.mesh.vertices[v]).norm(), 1e-9);
  }
  check_metrics_schema(json::parse(r.metrics_json));
  fs::remove_all(dir);
}

TEST(Script, CylinderCutScenarioOutputs) {
  const fs::path dir = fresh_dir("cylinder_cut");
  const RunReport r = run("fixture:cylinders", kScripts / "cylinders_cut.json", options_for(dir));
  ASSERT_EQ(r.exit_code, 0) << r.metrics_json;
  for (const char* f : {"cut_M1.obj", "cut_M2.obj", "frame_0000.obj"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_FALSE(fs::exists(dir / "frame_0001.obj"));
  const json m = json::parse(r.metrics_json);
  check_metrics_schema(m);
  EXPECT_EQ(m["actions"][0]["intersection_points"], 21);
  const Mesh frame = testing::read_obj((dir / "frame_0000.obj").string());
  EXPECT_EQ(frame.vertex_count(), 465 + 211);
  for (const Vec3& p : frame.vertices) EXPECT_TRUE(p.allFinite());
  fs::remove_all(dir);
}

TEST(Script, ErrorsAreReported) {
  const fs::path dir = fresh_dir("errors");
  const RunReport missing = run("fixture:nothing", kScripts / "empty.json", options_for(dir));
  EXPECT_NE(missing.exit_code, 0);
  check_metrics_schema(json::parse(missing.metrics_json));
  // The tear misses the surface: a module error mid-run.
  const Script s = parse_script(R"({"script_version": 1, "actions": [
    {"type": "export"},
    {"type": "tear", "scalpel": [{"t": 0, "tip": [5, 20, 20], "tail": [5, 19, 19]},
                                {"t": 1, "tip": [9, 20, 20], "tail": [9, 19, 19]}]}]})");
  const RunReport r = run_script(s, make_cylinders_fixture(), options_for(dir));
  EXPECT_NE(r.exit_code, 0);
  const json m = json::parse(r.metrics_json);
  check_metrics_schema(m);
  EXPECT_EQ(m["error"]["code"], "NoIntersection");
  EXPECT_EQ(m["error"]["action"], 1);
  EXPECT_EQ(m["actions"].size(), 1u);
  fs::remove_all(dir);
}

TEST(Script, RunsAreDeterministic) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  const RunReport ra = run("fixture:cylinders", kScripts / "cylinders_tear.json", options_for(a));
  const RunReport rb = run("fixture:cylinders", kScripts / "cylinders_tear.json", options_for(b));
  ASSERT_EQ(ra.exit_code, 0);
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".obj") continue;
    EXPECT_EQ(testing::read_file(entry.path().string()),
              testing::read_file((b / entry.path().filename()).string()));
  }
  EXPECT_EQ(stable_metrics(json::parse(ra.metrics_json)),
            stable_metrics(json::parse(rb.metrics_json)));
  fs::remove_all(a);
  fs::remove_all(b);
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  char buf[256];
  while (fgets(buf, sizeof buf, pipe.get())) out += buf;
  return out;
}

TEST(Cli, InfoReportsFixtureCounts) {
  const std::string cli = CGASKIN_CLI;
  EXPECT_NE(capture(cli + " info --rig fixture:cylinders").find("634 vertices, 758 faces"),
            std::string::npos);
  EXPECT_NE(capture(cli + " info --rig fixture:arm").find("3069 vertices, 5037 faces"),
            std::string::npos);
}

TEST(Cli, CompareSelfIsZero) {
  const fs::path dir = fresh_dir("cli_compare");
  const std::string out = capture(std::string(CGASKIN_CLI) +
                                  " compare --rig fixture:cylinders --reference cga --test cga"
                                  " --out " + dir.string());
  EXPECT_NE(out.find("linf 0.000000e+00"), std::string::npos) << out;
  fs::remove_all(dir);
}

TEST(Cli, FixtureRoundTripsThroughRun) {
  const fs::path dir = fresh_dir("cli_fixture");
  fs::create_directories(dir);
  const std::string cli = CGASKIN_CLI;
  ASSERT_EQ(std::system((cli + " fixture cylinders --out " + (dir / "rig.json").string()).c_str()), 0);
  ASSERT_EQ(std::system((cli + " run --rig " + (dir / "rig.json").string() + " --script " +
                         (kScripts / "empty.json").string() + " --out " + (dir / "out").string())
                            .c_str()),
            0);
  EXPECT_TRUE(fs::exists(dir / "out" / "frame_0000.obj"));
  EXPECT_NE(std::system((cli + " run --rig " + (dir / "missing.json").string() + " --script " +
                         (kScripts / "empty.json").string() + " --out " + (dir / "bad").string() +
                         " 2>/dev/null")
                            .c_str()),
            0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace cgaskin
