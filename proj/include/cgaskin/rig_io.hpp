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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgaskin/rig.hpp"

namespace cgaskin {

inline constexpr int kRigVersion = 1;

/// Parses and validates a rig document (see docs/rig_format.md). Throws the
/// LoadError family; messages name the offending element.
RiggedModel load_rig(std::string_view document);
RiggedModel load_rig_file(const std::filesystem::path& path);

/// Inverse of load_rig on the data model. Offsets are always written as TRS.
std::string serialize_rig(const RiggedModel& model);
void save_rig_file(const RiggedModel& model, const std::filesystem::path& path);

/// ASCII OBJ: `v x y z` with 17 significant digits, then `f i j k` 1-based.
std::string obj_string(const Mesh& mesh);
void export_obj(const Mesh& mesh, const std::filesystem::path& path);
/// Writes frame_0000.obj, frame_0001.obj, ... into `dir`; returns the paths.
std::vector<std::filesystem::path> export_obj_sequence(
    std::span<const Mesh> meshes, const std::filesystem::path& dir,
    int first_index = 0);

}  // namespace cgaskin
