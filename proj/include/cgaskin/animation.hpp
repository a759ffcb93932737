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

#include <string>
#include <vector>

#include "cgaskin/rig.hpp"

namespace cgaskin {

/// Global bone transforms at one instant, kept in three equivalent forms
/// computed by the same parent-before-child traversal.
struct Pose {
  double time = 0.0;
  std::vector<Trs> global;
  std::vector<cga::Versor> versors;  // M_n
  std::vector<Mat4> matrices;        // T_n
};

/// Interpolated key: clamps outside the key range, returns keys exactly at
/// key times, otherwise lerps translation and scale and nlerps rotation
/// (hemisphere corrected).
Trs interpolate_track(const Track& track, double time);

/// Local transform of `bone` at `time`; bones without a track (and the
/// root) keep their bind transform. Use .to_versor() / .to_matrix() for the
/// twins. Throws ParameterError for an unknown clip.
Trs local_transform_at(const RiggedModel& model, const std::string& clip, int bone,
                       double time);

Pose pose_from_locals(const RiggedModel& model, const std::vector<Trs>& locals,
                      double time = 0.0);
Pose bind_pose(const RiggedModel& model);
Pose global_pose_at(const RiggedModel& model, const std::string& clip, double time);

/// Inserts a key into `clip` (created if missing), keeping time order.
/// Returns true when an existing key at the same time was overwritten.
bool generate_keyframe(RiggedModel& model, const std::string& clip, int bone,
                       const Trs& trs, double time);

/// Bind transform of `bone` followed by `delta` in the bone's own frame.
Trs relative_to_bind(const RiggedModel& model, int bone, const Trs& delta);

}  // namespace cgaskin
