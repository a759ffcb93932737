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

#include "cgaskin/script.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cgaskin/errors.hpp"
#include "cgaskin/fixtures.hpp"
#include "cgaskin/rig_io.hpp"

namespace cgaskin {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void only_keys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end()) {
      throw SchemaError(where + " has unknown field '" + key + "'");
    }
  }
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw SchemaError(where + " is missing '" + key + "'");
  return obj[key];
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + " must be a number");
  return j.get<double>();
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(where + " must be [x, y, z]");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + " must be a string");
  return j.get<std::string>();
}

Backend backend(const json& j, const std::string& where) {
  try {
    return parse_backend(text(j, where));
  } catch (const ParameterError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

Trs parse_trs(const json& j, const std::string& where) {
  only_keys(j, where, {"translation", "rotation_quat", "axis", "angle", "scale"});
  Trs t;
  if (j.contains("translation")) t.translation = vec3(j["translation"], where + ".translation");
  if (j.contains("rotation_quat")) {
    if (j.contains("axis") || j.contains("angle")) {
      throw SchemaError(where + " gives both rotation_quat and axis/angle");
    }
    const json& q = j["rotation_quat"];
    if (!q.is_array() || q.size() != 4) throw SchemaError(where + ".rotation_quat must be [w, x, y, z]");
    t.rotation = Quat(number(q[0], where), number(q[1], where), number(q[2], where),
                      number(q[3], where));
  } else if (j.contains("axis") || j.contains("angle")) {
    const Vec3 axis = vec3(need(j, "axis", where), where + ".axis");
    const double angle = number(need(j, "angle", where), where + ".angle");
    if (!(axis.norm() > 0.0)) throw SchemaError(where + ".axis must be non-zero");
    t.rotation = Quat(Eigen::AngleAxisd(angle, axis.normalized()));
  }
  if (j.contains("scale")) t.scale = number(j["scale"], where + ".scale");
  return t;
}

Plane parse_plane(const json& j, const std::string& where) {
  only_keys(j, where, {"normal", "d"});
  const Vec3 n = vec3(need(j, "normal", where), where + ".normal");
  const double d = number(need(j, "d", where), where + ".d");
  try {
    return Plane::from_normal(n, d);
  } catch (const ParameterError& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

std::vector<ScalpelState> parse_scalpel(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + " must be an array");
  std::vector<ScalpelState> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    only_keys(j[i], w, {"t", "tip", "tail"});
    ScalpelState s;
    s.time = number(need(j[i], "t", w), w + ".t");
    s.tip = vec3(need(j[i], "tip", w), w + ".tip");
    s.tail = vec3(need(j[i], "tail", w), w + ".tail");
    out.push_back(s);
  }
  return out;
}

Action parse_action(const json& j, const std::string& where) {
  const std::string type = text(need(j, "type", where), where + ".type");
  if (type == "set_keyframe") {
    only_keys(j, where, {"type", "clip", "bone", "time", "trs", "relative_to_bind"});
    SetKeyframeAction a;
    if (j.contains("clip")) a.clip = text(j["clip"], where + ".clip");
    const json& bone = need(j, "bone", where);
    if (!bone.is_number_integer()) throw SchemaError(where + ".bone must be an integer");
    a.bone = bone.get<int>();
    a.time = number(need(j, "time", where), where + ".time");
    a.trs = parse_trs(need(j, "trs", where), where + ".trs");
    if (j.contains("relative_to_bind")) {
      if (!j["relative_to_bind"].is_boolean()) {
        throw SchemaError(where + ".relative_to_bind must be a boolean");
      }
      a.relative_to_bind = j["relative_to_bind"].get<bool>();
    }
    return a;
  }
  if (type == "sample") {
    only_keys(j, where, {"type", "clip", "times", "backend"});
    SampleAction a;
    if (j.contains("clip")) a.clip = text(j["clip"], where + ".clip");
    const json& times = need(j, "times", where);
    if (!times.is_array()) throw SchemaError(where + ".times must be an array");
    for (const json& t : times) a.times.push_back(number(t, where + ".times"));
    if (j.contains("backend")) a.backend = backend(j["backend"], where + ".backend");
    return a;
  }
  if (type == "cut") {
    only_keys(j, where, {"type", "plane", "keep"});
    CutAction a;
    a.plane = parse_plane(need(j, "plane", where), where + ".plane");
    if (j.contains("keep")) {
      const std::string keep = text(j["keep"], where + ".keep");
      if (keep == "M1") {
        a.keep = CutKeep::kM1;
      } else if (keep == "M2") {
        a.keep = CutKeep::kM2;
      } else if (keep == "both") {
        a.keep = CutKeep::kBoth;
      } else {
        throw SchemaError(where + ".keep must be \"M1\", \"M2\" or \"both\"");
      }
    }
    return a;
  }
  if (type == "tear") {
    only_keys(j, where, {"type", "scalpel", "delta"});
    TearAction a;
    a.scalpel = parse_scalpel(need(j, "scalpel", where), where + ".scalpel");
    if (j.contains("delta")) a.delta = number(j["delta"], where + ".delta");
    return a;
  }
  if (type == "compare") {
    only_keys(j, where, {"type", "clip", "time", "reference", "test"});
    CompareAction a;
    if (j.contains("clip")) a.clip = text(j["clip"], where + ".clip");
    if (j.contains("time")) a.time = number(j["time"], where + ".time");
    if (j.contains("reference")) a.reference = backend(j["reference"], where + ".reference");
    if (j.contains("test")) a.test = backend(j["test"], where + ".test");
    return a;
  }
  if (type == "export") {
    only_keys(j, where, {"type", "file", "clip", "time", "backend"});
    ExportAction a;
    if (j.contains("file")) a.file = text(j["file"], where + ".file");
    if (j.contains("clip")) a.clip = text(j["clip"], where + ".clip");
    if (j.contains("time")) a.time = number(j["time"], where + ".time");
    if (j.contains("backend")) a.backend = backend(j["backend"], where + ".backend");
    return a;
  }
  if (type == "bench") {
    only_keys(j, where, {"type", "repeat", "plane", "scalpel"});
    BenchAction a;
    if (j.contains("repeat")) {
      if (!j["repeat"].is_number_integer()) throw SchemaError(where + ".repeat must be an integer");
      a.repeat = j["repeat"].get<int>();
    }
    if (j.contains("plane")) a.plane = parse_plane(j["plane"], where + ".plane");
    if (j.contains("scalpel")) a.scalpel = parse_scalpel(j["scalpel"], where + ".scalpel");
    return a;
  }
  throw SchemaError(where + " has unknown type '" + type + "'");
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json plane_json(const Plane& p) { return json{{"normal", vec_json(p.normal)}, {"d", p.d}}; }

json scalpel_json(const std::vector<ScalpelState>& states) {
  json out = json::array();
  for (const ScalpelState& s : states) {
    out.push_back(json{{"t", s.time}, {"tip", vec_json(s.tip)}, {"tail", vec_json(s.tail)}});
  }
  return out;
}

json action_json(const Action& action) {
  json j = std::visit(
      Overloaded{
          [](const SetKeyframeAction& a) {
            const Quat& q = a.trs.rotation;
            return json{{"clip", a.clip},
                        {"bone", a.bone},
                        {"time", a.time},
                        {"trs",
                         {{"translation", vec_json(a.trs.translation)},
                          {"rotation_quat", json::array({q.w(), q.x(), q.y(), q.z()})},
                          {"scale", a.trs.scale}}},
                        {"relative_to_bind", a.relative_to_bind}};
          },
          [](const SampleAction& a) {
            json j{{"clip", a.clip}, {"times", a.times}};
            if (a.backend) j["backend"] = std::string(backend_name(*a.backend));
            return j;
          },
          [](const CutAction& a) {
            const char* keep = a.keep == CutKeep::kM1 ? "M1" : a.keep == CutKeep::kM2 ? "M2" : "both";
            return json{{"plane", plane_json(a.plane)}, {"keep", keep}};
          },
          [](const TearAction& a) {
            json j{{"scalpel", scalpel_json(a.scalpel)}};
            if (a.delta) j["delta"] = *a.delta;
            return j;
          },
          [](const CompareAction& a) {
            json j{{"time", a.time},
                   {"reference", std::string(backend_name(a.reference))},
                   {"test", std::string(backend_name(a.test))}};
            if (a.clip) j["clip"] = *a.clip;
            return j;
          },
          [](const ExportAction& a) {
            json j{{"file", a.file}, {"time", a.time}};
            if (a.clip) j["clip"] = *a.clip;
            if (a.backend) j["backend"] = std::string(backend_name(*a.backend));
            return j;
          },
          [](const BenchAction& a) {
            json j{{"repeat", a.repeat}};
            if (a.plane) j["plane"] = plane_json(*a.plane);
            if (!a.scalpel.empty()) j["scalpel"] = scalpel_json(a.scalpel);
            return j;
          },
      },
      action);
  j["type"] = std::string(action_type(action));
  return j;
}

std::string obj_name(int frame) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04d.obj", frame);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

double median_ms(int repeat, const std::function<void()>& body) {
  std::vector<double> times;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    times.push_back(elapsed_ms(start));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Pose pose_for(const RiggedModel& model, const std::optional<std::string>& clip, double time) {
  return clip ? global_pose_at(model, *clip, time) : bind_pose(model);
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

class Runner {
 public:
  Runner(RiggedModel model, const RunOptions& options)
      : model_(std::move(model)), options_(options) {}

  json execute(const Action& action) {
    return std::visit([this](const auto& a) { return run(a); }, action);
  }

  void export_bind() {
    export_obj(posed_mesh(model_, skin(model_, bind_pose(model_), options_.backend)),
               options_.out_dir / obj_name(frame_++));
  }

 private:
  json run(const SetKeyframeAction& a) {
    const Trs trs = a.relative_to_bind ? relative_to_bind(model_, a.bone, a.trs) : a.trs;
    const bool overwritten = generate_keyframe(model_, a.clip, a.bone, trs, a.time);
    return json{{"overwritten", overwritten}};
  }

  json run(const SampleAction& a) {
    const Backend b = a.backend.value_or(options_.backend);
    json frames = json::array();
    for (double t : a.times) {
      const SkinnedFrame frame = skin(model_, global_pose_at(model_, a.clip, t), b);
      const std::string name = obj_name(frame_++);
      export_obj(posed_mesh(model_, frame), options_.out_dir / name);
      frames.push_back(json{{"file", name}, {"time", t}});
    }
    return json{{"backend", std::string(backend_name(b))}, {"frames", std::move(frames)}};
  }

  json run(const CutAction& a) {
    const CutResult r = cut(model_, a.plane);
    export_obj(r.m1.mesh, options_.out_dir / "cut_M1.obj");
    export_obj(r.m2.mesh, options_.out_dir / "cut_M2.obj");
    int closed = 0;
    for (const CutChain& c : r.chains) closed += c.closed ? 1 : 0;
    json out{{"intersection_points", static_cast<int>(r.points.size())},
             {"cut_faces", r.cut_faces},
             {"chains", static_cast<int>(r.chains.size())},
             {"closed_chains", closed},
             {"m1", {{"vertices", r.m1.mesh.vertex_count()}, {"faces", r.m1.mesh.face_count()}}},
             {"m2", {{"vertices", r.m2.mesh.vertex_count()}, {"faces", r.m2.mesh.face_count()}}}};
    switch (a.keep) {
      case CutKeep::kM1: model_ = r.m1; break;
      case CutKeep::kM2: model_ = r.m2; break;
      case CutKeep::kBoth: model_ = merge_models(r.m1, r.m2); break;
    }
    validate_model(model_);
    return out;
  }

  json run(const TearAction& a) {
    TearOptions opts;
    opts.accelerate = options_.accelerate;
    const TearResult r = tear(model_, a.scalpel, opts);
    const double delta = a.delta.value_or(default_tear_opening(model_.mesh));
    model_ = open_tear(r.torn.model, r.torn.duplicates, delta);
    export_obj(model_.mesh, options_.out_dir / "torn.obj");
    json steps = json::array();
    for (const TearPath& p : r.steps) {
      steps.push_back(json{{"intersection_points", p.intersection_points()},
                           {"projection_distance", p.projection_distance}});
    }
    return json{{"intersection_points", r.intersection_points},
                {"duplicated_vertices", r.duplicated_vertices},
                {"delta", delta},
                {"steps", std::move(steps)},
                {"vertices", model_.mesh.vertex_count()},
                {"faces", model_.mesh.face_count()}};
  }

  json run(const CompareAction& a) {
    const ErrorReport e =
        compare_backends(model_, pose_for(model_, a.clip, a.time), a.reference, a.test);
    return json{{"reference", std::string(backend_name(a.reference))},
                {"test", std::string(backend_name(a.test))},
                {"linf", e.linf},
                {"mean", e.mean},
                {"worst_vertex", e.worst_vertex}};
  }

  json run(const ExportAction& a) {
    const Backend b = a.backend.value_or(options_.backend);
    const Mesh mesh = a.clip ? posed_mesh(model_, skin(model_, pose_for(model_, a.clip, a.time), b))
                             : model_.mesh;
    export_obj(mesh, options_.out_dir / a.file);
    return json{{"file", a.file}, {"vertices", mesh.vertex_count()}, {"faces", mesh.face_count()}};
  }

  json run(const BenchAction& a) {
    json timings;
    const Pose pose = bind_pose(model_);
    for (Backend b : {Backend::kCga, Backend::kLbs, Backend::kDq}) {
      const std::string name(backend_name(b));
      timings["skin_" + name + "_parallel_ms"] =
          median_ms(a.repeat, [&] { skin(model_, pose, b, {true, true}); });
      timings["skin_" + name + "_serial_ms"] =
          median_ms(a.repeat, [&] { skin(model_, pose, b, {true, false}); });
    }
    timings["skin_cga_reference_ms"] =
        median_ms(a.repeat, [&] { reference::skin_cga(model_, pose); });
    json out{{"repeat", a.repeat}, {"vertices", model_.mesh.vertex_count()},
             {"faces", model_.mesh.face_count()}};
    if (a.plane) {
      int points = 0;
      timings["cut_serial_ms"] = median_ms(a.repeat, [&] {
        points = static_cast<int>(cut(model_, *a.plane, {{}, false}).points.size());
      });
      timings["cut_parallel_ms"] = median_ms(a.repeat, [&] { cut(model_, *a.plane); });
      out["cut_intersection_points"] = points;
    }
    if (!a.scalpel.empty()) {
      const Bvh bvh(model_.mesh);
      timings["scalpel_hit_linear_ms"] = median_ms(a.repeat, [&] {
        for (const ScalpelState& s : a.scalpel) scalpel_hit(model_.mesh, s, nullptr, false);
      });
      timings["scalpel_hit_bvh_ms"] = median_ms(a.repeat, [&] {
        for (const ScalpelState& s : a.scalpel) scalpel_hit(model_.mesh, s, &bvh);
      });
      int points = 0;
      timings["tear_ms"] = median_ms(a.repeat, [&] {
        points = tear(model_, a.scalpel, {options_.accelerate, true, {}}).intersection_points;
      });
      out["tear_intersection_points"] = points;
    }
    out["timings"] = std::move(timings);
    return out;
  }

  RiggedModel model_;
  const RunOptions& options_;
  int frame_ = 0;
};

}  // namespace

std::string_view action_type(const Action& action) {
  static constexpr std::string_view names[] = {"set_keyframe", "sample", "cut",   "tear",
                                               "compare",      "export", "bench"};
  return names[action.index()];
}

Script parse_script(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("script is not valid JSON: ") + e.what());
  }
  only_keys(doc, "script", {"script_version", "actions"});
  const json& version = need(doc, "script_version", "script");
  if (!version.is_number_integer() || version.get<int>() != kScriptVersion) {
    throw SchemaError("unsupported script_version " + version.dump());
  }
  const json& actions = need(doc, "actions", "script");
  if (!actions.is_array()) throw SchemaError("script actions must be an array");
  Script script;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    script.actions.push_back(parse_action(actions[i], "action " + std::to_string(i)));
  }
  return script;
}

Script load_script_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open script " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str());
}

std::string serialize_script(const Script& script) {
  json actions = json::array();
  for (const Action& a : script.actions) actions.push_back(action_json(a));
  return json{{"script_version", kScriptVersion}, {"actions", std::move(actions)}}.dump(2) +
         "\n";
}

void validate_script(const Script& script, const RiggedModel& model) {
  std::set<std::string> clips;
  for (const auto& [name, clip] : model.clips) clips.insert(name);
  const int bones = static_cast<int>(model.bones.size());
  auto fail = [](std::size_t i, const std::string& what) {
    throw ParameterError("action " + std::to_string(i) + ": " + what);
  };
  auto need_clip = [&](std::size_t i, const std::string& clip) {
    if (!clips.contains(clip)) fail(i, "clip '" + clip + "' has no keyframes yet");
  };
  auto check_scalpel = [&](std::size_t i, const std::vector<ScalpelState>& s) {
    if (s.size() < 2) fail(i, "a tear needs at least two scalpel states");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!s[k].tip.allFinite() || !s[k].tail.allFinite() || !std::isfinite(s[k].time)) {
        fail(i, "scalpel state " + std::to_string(k) + " is not finite");
      }
      if (k > 0 && !(s[k].time > s[k - 1].time)) fail(i, "scalpel times must increase");
    }
  };

  for (std::size_t i = 0; i < script.actions.size(); ++i) {
    std::visit(
        Overloaded{
            [&](const SetKeyframeAction& a) {
              if (a.bone < 0 || a.bone >= bones) fail(i, "unknown bone " + std::to_string(a.bone));
              if (!model.bones[a.bone].parent) fail(i, "the root bone is not animated");
              if (!std::isfinite(a.time)) fail(i, "time is not finite");
              if (!a.trs.translation.allFinite() || !std::isfinite(a.trs.scale) ||
                  !(a.trs.scale > 0.0)) {
                fail(i, "keyframe needs a finite translation and a positive scale");
              }
              if (std::abs(a.trs.rotation.norm() - 1.0) > 1e-9) {
                fail(i, "rotation_quat is not unit length");
              }
              clips.insert(a.clip);
            },
            [&](const SampleAction& a) {
              need_clip(i, a.clip);
              if (a.times.empty()) fail(i, "no sample times");
              for (double t : a.times) {
                if (!std::isfinite(t)) fail(i, "sample time is not finite");
              }
            },
            [&](const CutAction&) {},
            [&](const TearAction& a) {
              check_scalpel(i, a.scalpel);
              if (a.delta && !(*a.delta >= 0.0 && std::isfinite(*a.delta))) {
                fail(i, "delta must be finite and non-negative");
              }
            },
            [&](const CompareAction& a) {
              if (a.clip) need_clip(i, *a.clip);
            },
            [&](const ExportAction& a) {
              if (a.clip) need_clip(i, *a.clip);
              const std::filesystem::path p(a.file);
              if (a.file.empty() || p.filename() != p || p.extension() != ".obj") {
                fail(i, "export file must be a plain name ending in .obj");
              }
            },
            [&](const BenchAction& a) {
              if (a.repeat < 1) fail(i, "repeat must be at least 1");
              if (!a.scalpel.empty()) check_scalpel(i, a.scalpel);
            },
        },
        script.actions[i]);
  }
}

RunReport run_script(const Script& script, RiggedModel model, const RunOptions& options) {
  json metrics{{"metrics_version", kMetricsVersion},
               {"status", "ok"},
               {"seed", options.seed},
               {"backend", std::string(backend_name(options.backend))},
               {"accelerate", options.accelerate},
               {"actions", json::array()}};
  RunReport report;
  std::optional<std::size_t> current;
  try {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());
    validate_script(script, model);
    Runner runner(std::move(model), options);
    if (script.actions.empty()) runner.export_bind();
    for (std::size_t i = 0; i < script.actions.size(); ++i) {
      current = i;
      const auto start = std::chrono::steady_clock::now();
      json entry = runner.execute(script.actions[i]);
      entry["index"] = i;
      entry["type"] = std::string(action_type(script.actions[i]));
      entry["wall_ms"] = elapsed_ms(start);
      metrics["actions"].push_back(std::move(entry));
    }
    current.reset();
  } catch (const Error& e) {
    metrics["status"] = "error";
    metrics["error"] = json{{"code", e.code()},
                            {"message", e.what()},
                            {"action", current ? json(*current) : json(nullptr)}};
    report.exit_code = 1;
  } catch (const std::exception& e) {
    metrics["status"] = "error";
    metrics["error"] = json{{"code", "InternalError"},
                            {"message", e.what()},
                            {"action", current ? json(*current) : json(nullptr)}};
    report.exit_code = 1;
  }
  report.metrics_json = metrics.dump(2) + "\n";
  try {
    write_text(options.out_dir / "metrics.json", report.metrics_json);
  } catch (const Error&) {
    report.exit_code = report.exit_code ? report.exit_code : 2;
  }
  return report;
}

RiggedModel load_model_source(const std::string& source) {
  constexpr std::string_view prefix = "fixture:";
  if (source.starts_with(prefix)) return make_fixture(source.substr(prefix.size()));
  return load_rig_file(source);
}

RunReport run(const std::string& rig_source, const std::filesystem::path& script_path,
              const RunOptions& options) {
  RiggedModel model;
  Script script;
  try {
    model = load_model_source(rig_source);
    script = load_script_file(script_path);
  } catch (const Error& e) {
    RunReport report;
    report.exit_code = 1;
    const json metrics{{"metrics_version", kMetricsVersion},
                       {"status", "error"},
                       {"seed", options.seed},
                       {"backend", std::string(backend_name(options.backend))},
                       {"accelerate", options.accelerate},
                       {"actions", json::array()},
                       {"error", {{"code", e.code()}, {"message", e.what()}, {"action", nullptr}}}};
    report.metrics_json = metrics.dump(2) + "\n";
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    try {
      write_text(options.out_dir / "metrics.json", report.metrics_json);
    } catch (const Error&) {
    }
    return report;
  }
  return run_script(script, std::move(model), options);
}

}  // namespace cgaskin
