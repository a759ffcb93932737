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

#include "cgaskin/animation.hpp"

#include <algorithm>
#include <cmath>

#include "cgaskin/errors.hpp"

namespace cgaskin {

Trs interpolate_track(const Track& track, double time) {
  if (track.empty()) throw ParameterError("track has no keys");
  if (time <= track.front().time) return track.front().trs;
  if (time >= track.back().time) return track.back().trs;
  const auto hi = std::upper_bound(
      track.begin(), track.end(), time,
      [](double t, const TrsKey& k) { return t < k.time; });
  const TrsKey& k1 = *hi;
  const TrsKey& k0 = *(hi - 1);
  if (time == k0.time) return k0.trs;

  const double a = (time - k0.time) / (k1.time - k0.time);
  Trs out;
  out.translation = (1.0 - a) * k0.trs.translation + a * k1.trs.translation;
  out.scale = (1.0 - a) * k0.trs.scale + a * k1.trs.scale;
  Eigen::Vector4d q0 = k0.trs.rotation.coeffs();
  const Eigen::Vector4d q1 = k1.trs.rotation.coeffs();
  if (q0.dot(q1) < 0.0) q0 = -q0;
  const Eigen::Vector4d q = (1.0 - a) * q0 + a * q1;
  const double n = q.norm();
  if (n < 1e-12) throw DegenerateBlend("rotation keys blend to zero");
  out.rotation = Quat(q / n);
  return out;
}

Trs local_transform_at(const RiggedModel& model, const std::string& clip, int bone,
                       double time) {
  const auto it = model.clips.find(clip);
  if (it == model.clips.end()) throw ParameterError("unknown clip '" + clip + "'");
  const auto track = it->second.tracks.find(bone);
  if (track == it->second.tracks.end()) return model.bones.at(bone).local_bind;
  return interpolate_track(track->second, time);
}

Pose pose_from_locals(const RiggedModel& model, const std::vector<Trs>& locals,
                      double time) {
  const std::size_t n = model.bones.size();
  Pose pose;
  pose.time = time;
  pose.global.assign(n, Trs::identity());
  pose.versors.assign(n, cga::Versor::identity());
  pose.matrices.assign(n, Mat4::Identity());
  for (int b : bone_order(model)) {
    const Bone& bone = model.bones[b];
    if (!bone.parent) continue;  // root stays identity
    const int p = *bone.parent;
    pose.global[b] = compose(pose.global[p], locals[b]);
    pose.versors[b] = pose.versors[p] * locals[b].to_versor();
    pose.matrices[b] = pose.matrices[p] * locals[b].to_matrix();
  }
  return pose;
}

Pose bind_pose(const RiggedModel& model) {
  std::vector<Trs> locals;
  locals.reserve(model.bones.size());
  for (const Bone& b : model.bones) locals.push_back(b.local_bind);
  return pose_from_locals(model, locals, 0.0);
}

Pose global_pose_at(const RiggedModel& model, const std::string& clip, double time) {
  std::vector<Trs> locals;
  locals.reserve(model.bones.size());
  for (const Bone& b : model.bones) {
    locals.push_back(local_transform_at(model, clip, b.id, time));
  }
  return pose_from_locals(model, locals, time);
}

bool generate_keyframe(RiggedModel& model, const std::string& clip, int bone,
                       const Trs& trs, double time) {
  if (bone < 0 || bone >= static_cast<int>(model.bones.size())) {
    throw ParameterError("keyframe for unknown bone " + std::to_string(bone));
  }
  if (!model.bones[bone].parent) {
    throw ParameterError("the root bone " + std::to_string(bone) + " is not animated");
  }
  if (!std::isfinite(time)) throw ParameterError("keyframe time is not finite");
  if (!(trs.scale > 0.0)) throw ParameterError("keyframe scale must be positive");
  if (std::abs(trs.rotation.norm() - 1.0) > 1e-9) {
    throw ParameterError("keyframe rotation is not a unit quaternion");
  }
  Track& track = model.clips[clip].tracks[bone];
  const auto it = std::lower_bound(
      track.begin(), track.end(), time,
      [](const TrsKey& k, double t) { return k.time < t; });
  if (it != track.end() && it->time == time) {
    it->trs = trs;
    return true;
  }
  track.insert(it, TrsKey{time, trs});
  return false;
}

Trs relative_to_bind(const RiggedModel& model, int bone, const Trs& delta) {
  return compose(model.bones.at(bone).local_bind, delta);
}

}  // namespace cgaskin
