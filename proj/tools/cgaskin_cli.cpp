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

// Command-line driver. `run` executes a script file; the other action
// subcommands build a one-action script from their flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgaskin/errors.hpp"
#include "cgaskin/fixtures.hpp"
#include "cgaskin/rig_io.hpp"
#include "cgaskin/script.hpp"

namespace {

using namespace cgaskin;

struct Common {
  std::string rig;
  std::string out = "out";
  std::uint64_t seed = 0;
  std::string backend = "cga";
  std::string accel = "off";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--rig", c.rig, "Rig JSON file, or fixture:NAME")->required();
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--seed", c.seed, "Seed recorded in metrics.json");
  app->add_option("--backend", c.backend, "Skinning backend")
      ->check(CLI::IsMember({"cga", "lbs", "dq"}));
  app->add_option("--accel", c.accel, "BVH for scalpel hits")->check(CLI::IsMember({"on", "off"}));
}

RunOptions run_options(const Common& c) {
  RunOptions o;
  o.out_dir = c.out;
  o.seed = c.seed;
  o.backend = parse_backend(c.backend);
  o.accelerate = c.accel == "on";
  return o;
}

int finish(const RunReport& report, const RunOptions& options) {
  if (report.exit_code != 0) {
    std::cerr << "error: see " << (options.out_dir / "metrics.json").string() << "\n"
              << report.metrics_json;
  }
  return report.exit_code;
}

RunReport run_one(const Common& c, Action action) {
  const RunOptions options = run_options(c);
  Script script;
  script.actions.push_back(std::move(action));
  RunReport report = run_script(script, load_model_source(c.rig), options);
  finish(report, options);
  return report;
}

ScalpelState parse_state(const std::vector<double>& v) {
  return {v[0], {v[1], v[2], v[3]}, {v[4], v[5], v[6]}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cgaskin: conformal skinning, cutting and tearing of rigged meshes"};
  app.require_subcommand(1);

  Common common;
  std::string script_path;
  auto* run = app.add_subcommand("run", "Execute a script");
  add_common(run, common);
  run->add_option("--script", script_path, "Script JSON")->required();

  Common animate_c;
  SampleAction sample;
  auto* animate = app.add_subcommand("animate", "Write skinned frames of a clip");
  add_common(animate, animate_c);
  animate->add_option("--clip", sample.clip, "Clip name");
  animate->add_option("--times", sample.times, "Sample times")->required();

  Common cut_c;
  std::vector<double> normal;
  double offset = 0.0;
  std::string keep = "both";
  auto* cut = app.add_subcommand("cut", "Cut by the plane n.x = d");
  add_common(cut, cut_c);
  cut->add_option("--normal", normal, "Plane normal")->expected(3)->required();
  cut->add_option("--d", offset, "Plane offset")->required();
  cut->add_option("--keep", keep, "Piece kept")->check(CLI::IsMember({"M1", "M2", "both"}));

  Common tear_c;
  std::vector<std::vector<double>> states;
  double delta = -1.0;
  auto* tear = app.add_subcommand("tear", "Tear along scalpel states");
  add_common(tear, tear_c);
  tear->add_option("--state", states, "t tip_x tip_y tip_z tail_x tail_y tail_z")
      ->expected(7)
      ->required();
  tear->add_option("--delta", delta, "Opening distance (default 1% of the diagonal)");

  Common compare_c;
  CompareAction compare_a;
  std::string reference = "dq", test = "cga", compare_clip;
  auto* compare = app.add_subcommand("compare", "Compare two skinning backends");
  add_common(compare, compare_c);
  compare->add_option("--clip", compare_clip, "Clip name (bind pose when omitted)");
  compare->add_option("--time", compare_a.time, "Pose time");
  compare->add_option("--reference", reference)->check(CLI::IsMember({"cga", "lbs", "dq"}));
  compare->add_option("--test", test)->check(CLI::IsMember({"cga", "lbs", "dq"}));

  Common bench_c;
  BenchAction bench_a;
  std::vector<double> bench_plane;
  std::vector<std::vector<double>> bench_states;
  auto* bench = app.add_subcommand("bench", "Time skinning, cut and scalpel hits");
  add_common(bench, bench_c);
  bench->add_option("--repeat", bench_a.repeat, "Repetitions per timing");
  bench->add_option("--plane", bench_plane, "nx ny nz d")->expected(4);
  bench->add_option("--state", bench_states, "t tip_x tip_y tip_z tail_x tail_y tail_z")
      ->expected(7);

  std::string info_rig;
  auto* info = app.add_subcommand("info", "Print model statistics");
  info->add_option("--rig", info_rig, "Rig JSON file, or fixture:NAME")->required();

  std::string fixture_name, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in fixture as rig JSON");
  fixture->add_option("name", fixture_name, "Fixture name")
      ->required()
      ->check(CLI::IsMember(fixture_names()));
  fixture->add_option("--out", fixture_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const RunOptions options = run_options(common);
      return finish(cgaskin::run(common.rig, script_path, options), options);
    }
    if (*animate) {
      if (animate_c.backend != "cga") sample.backend = parse_backend(animate_c.backend);
      return run_one(animate_c, sample).exit_code;
    }
    if (*cut) {
      CutAction a;
      a.plane = Plane::from_normal({normal[0], normal[1], normal[2]}, offset);
      a.keep = keep == "M1" ? CutKeep::kM1 : keep == "M2" ? CutKeep::kM2 : CutKeep::kBoth;
      return run_one(cut_c, a).exit_code;
    }
    if (*tear) {
      TearAction a;
      for (const auto& s : states) a.scalpel.push_back(parse_state(s));
      if (delta >= 0.0) a.delta = delta;
      return run_one(tear_c, a).exit_code;
    }
    if (*compare) {
      if (!compare_clip.empty()) compare_a.clip = compare_clip;
      compare_a.reference = parse_backend(reference);
      compare_a.test = parse_backend(test);
      const RunReport report = run_one(compare_c, compare_a);
      if (report.exit_code == 0) {
        const auto m = nlohmann::json::parse(report.metrics_json)["actions"][0];
        std::printf("%s vs %s: linf %.6e (%.6g%%), mean %.6e, worst vertex %d\n",
                    reference.c_str(), test.c_str(), m["linf"].get<double>(),
                    100.0 * m["linf"].get<double>(), m["mean"].get<double>(),
                    m["worst_vertex"].get<int>());
      }
      return report.exit_code;
    }
    if (*bench) {
      if (!bench_plane.empty()) {
        bench_a.plane =
            Plane::from_normal({bench_plane[0], bench_plane[1], bench_plane[2]}, bench_plane[3]);
      }
      for (const auto& s : bench_states) bench_a.scalpel.push_back(parse_state(s));
      return run_one(bench_c, bench_a).exit_code;
    }
    if (*info) {
      const RiggedModel model = load_model_source(info_rig);
      const TopologySummary t = summarize_topology(model.mesh);
      std::printf("%d vertices, %d faces\n", model.mesh.vertex_count(), model.mesh.face_count());
      std::printf("%zu bones, %zu clips\n", model.bones.size(), model.clips.size());
      std::printf("%d edges, %d boundary edges, %d boundary loops, %d components\n", t.edges,
                  t.boundary_edges, t.boundary_loops, t.components);
      std::printf("bbox diagonal %.6g, surface area %.6g\n", bbox_diagonal(model.mesh),
                  surface_area(model.mesh));
      return 0;
    }
    if (*fixture) {
      const std::string doc = serialize_rig(make_fixture(fixture_name));
      if (fixture_out.empty()) {
        std::cout << doc;
      } else {
        std::ofstream out(fixture_out, std::ios::binary);
        out << doc;
        if (!out) throw IoError("cannot write " + fixture_out);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
