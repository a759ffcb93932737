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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cgaskin/cutting.hpp"
#include "cgaskin/skinning.hpp"
#include "cgaskin/tearing.hpp"

namespace cgaskin {

inline constexpr int kScriptVersion = 1;
inline constexpr int kMetricsVersion = 1;

struct SetKeyframeAction {
  std::string clip = "default";
  int bone = 0;
  double time = 0.0;
  Trs trs;
  bool relative_to_bind = true;  // trs applied after the bone's bind transform
};

struct SampleAction {
  std::string clip = "default";
  std::vector<double> times;
  std::optional<Backend> backend;
};

enum class CutKeep { kM1, kM2, kBoth };

struct CutAction {
  Plane plane;
  CutKeep keep = CutKeep::kBoth;  // which piece the following actions use
};

struct TearAction {
  std::vector<ScalpelState> scalpel;
  std::optional<double> delta;  // default: 1% of the bounding-box diagonal
};

struct CompareAction {
  std::optional<std::string> clip;  // bind pose when unset
  double time = 0.0;
  Backend reference = Backend::kDq;
  Backend test = Backend::kCga;
};

struct ExportAction {
  std::string file = "model.obj";
  std::optional<std::string> clip;  // posed at `time` when set
  double time = 0.0;
  std::optional<Backend> backend;
};

struct BenchAction {
  int repeat = 5;
  std::optional<Plane> plane;
  std::vector<ScalpelState> scalpel;
};

using Action = std::variant<SetKeyframeAction, SampleAction, CutAction, TearAction,
                            CompareAction, ExportAction, BenchAction>;

struct Script {
  std::vector<Action> actions;
};

std::string_view action_type(const Action& action);

/// Parses a script document; throws SchemaError naming the action.
Script parse_script(std::string_view document);
Script load_script_file(const std::filesystem::path& path);
std::string serialize_script(const Script& script);

/// Checks every action against the model before anything runs. Throws
/// ParameterError with the failing action's index in the message.
void validate_script(const Script& script, const RiggedModel& model);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  Backend backend = Backend::kCga;
  bool accelerate = false;
};

struct RunReport {
  int exit_code = 0;
  std::string metrics_json;  // also written to out_dir/metrics.json
};

/// Executes the script, writing OBJ files and metrics.json. Errors are
/// recorded in the metrics and give a non-zero exit code.
RunReport run_script(const Script& script, RiggedModel model, const RunOptions& options);

/// Loads a rig file, or a built-in fixture given as "fixture:NAME".
RiggedModel load_model_source(const std::string& source);

/// Loads both inputs and runs; load failures are reported like any other.
RunReport run(const std::string& rig_source, const std::filesystem::path& script_path,
              const RunOptions& options);

}  // namespace cgaskin
