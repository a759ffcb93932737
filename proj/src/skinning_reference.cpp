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

#include <string>

#include "cgaskin/dual_quaternion.hpp"
#include "cgaskin/errors.hpp"
#include "cgaskin/skinning.hpp"

namespace cgaskin::reference {
namespace {

void require_finite(const Vec3& p, int v) {
  if (!p.allFinite()) {
    throw NumericalFailure("non-finite skinned position at vertex " + std::to_string(v));
  }
}

}  // namespace

SkinnedFrame skin_cga(const RiggedModel& model, const Pose& pose, bool project_per_term) {
  std::vector<cga::Versor> f(model.bones.size()), f_inv(model.bones.size());
  for (const Bone& b : model.bones) {
    f[b.id] = pose.versors.at(b.id) * b.offset_versor();
    f_inv[b.id] = cga::versor_inverse(f[b.id]);
  }
  SkinnedFrame frame{pose.time, Backend::kCga, {}};
  frame.positions.reserve(model.mesh.vertices.size());
  for (int v = 0; v < model.mesh.vertex_count(); ++v) {
    const cga::Multivector x = cga::up(model.mesh.vertices[v]);
    Vec3 p = Vec3::Zero();
    cga::Multivector sum;
    for (const Influence& inf : model.weights.at(v)) {
      const cga::Multivector y = f[inf.bone].value() * x * f_inv[inf.bone].value();
      if (project_per_term) {
        p += inf.weight * cga::down(y);
      } else {
        sum += inf.weight * y;
      }
    }
    if (!project_per_term) p = cga::down(sum);
    require_finite(p, v);
    frame.positions.push_back(p);
  }
  return frame;
}

SkinnedFrame skin_lbs(const RiggedModel& model, const Pose& pose) {
  SkinnedFrame frame{pose.time, Backend::kLbs, {}};
  frame.positions.reserve(model.mesh.vertices.size());
  for (int v = 0; v < model.mesh.vertex_count(); ++v) {
    const Eigen::Vector4d rest = model.mesh.vertices[v].homogeneous();
    Eigen::Vector4d p = Eigen::Vector4d::Zero();
    for (const Influence& inf : model.weights.at(v)) {
      const Bone& b = model.bones.at(inf.bone);
      p += inf.weight * (pose.matrices.at(b.id) * b.offset.to_matrix() * rest);
    }
    require_finite(p.head<3>(), v);
    frame.positions.push_back(p.head<3>());
  }
  return frame;
}

SkinnedFrame skin_dq(const RiggedModel& model, const Pose& pose) {
  SkinnedFrame frame{pose.time, Backend::kDq, {}};
  frame.positions.reserve(model.mesh.vertices.size());
  for (int v = 0; v < model.mesh.vertex_count(); ++v) {
    const InfluenceList& w = model.weights.at(v);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i].weight > w[pivot].weight) pivot = i;
    }
    auto bone_transform = [&](int bone) {
      return compose(pose.global.at(bone), model.bones.at(bone).offset);
    };
    const Quat ref = bone_transform(w[pivot].bone).rotation;
    DualQuaternion blend;
    blend.real.setZero();
    double s = 0.0;
    for (const Influence& inf : w) {
      const Trs t = bone_transform(inf.bone);
      const DualQuaternion q = DualQuaternion::from_rigid(t.rotation, t.translation);
      blend.add_scaled(q, t.rotation.dot(ref) < 0.0 ? -inf.weight : inf.weight);
      s += inf.weight * t.scale;
    }
    const Vec3 p = blend.transform_point(s * model.mesh.vertices[v]);
    require_finite(p, v);
    frame.positions.push_back(p);
  }
  return frame;
}

}  // namespace cgaskin::reference
