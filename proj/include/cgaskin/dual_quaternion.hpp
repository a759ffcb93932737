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

#include <Eigen/Core>

#include "cgaskin/transform.hpp"

namespace cgaskin {

/// Unit dual quaternion real + eps * dual, coefficients stored (x, y, z, w)
/// as in Eigen so blends are plain vector sums.
struct DualQuaternion {
  Eigen::Vector4d real = Eigen::Vector4d(0, 0, 0, 1);
  Eigen::Vector4d dual = Eigen::Vector4d::Zero();

  /// Rigid motion x -> R x + t.
  static DualQuaternion from_rigid(const Quat& rotation, const Vec3& translation);

  DualQuaternion& add_scaled(const DualQuaternion& q, double w) {
    real += w * q.real;
    dual += w * q.dual;
    return *this;
  }

  /// Normalises a blended value and applies it to a point. Throws
  /// DegenerateBlend if the real part vanished.
  Vec3 transform_point(const Vec3& p) const;
  Quat rotation() const;
  Vec3 translation() const;
};

}  // namespace cgaskin
