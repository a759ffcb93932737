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
#include <Eigen/Geometry>

#include "cgaskin/cga.hpp"

namespace cgaskin {

using Vec3 = Eigen::Vector3d;
using Mat4 = Eigen::Matrix4d;
using Quat = Eigen::Quaterniond;

/// Translation * Rotation * uniform Scale, acting as x -> t + s R x.
struct Trs {
  Vec3 translation = Vec3::Zero();
  Quat rotation = Quat::Identity();
  double scale = 1.0;

  static Trs identity() { return {}; }
  static Trs from_translation(const Vec3& t) { return {t, Quat::Identity(), 1.0}; }
  static Trs from_axis_angle(const Vec3& axis, double angle);

  cga::Versor to_versor() const;
  Mat4 to_matrix() const;
  Vec3 apply(const Vec3& p) const { return translation + scale * (rotation * p); }

  bool operator==(const Trs& o) const {
    return translation == o.translation &&
           rotation.coeffs() == o.rotation.coeffs() && scale == o.scale;
  }
};

/// a then-applied-after b: (a * b)(x) = a(b(x)).
Trs compose(const Trs& a, const Trs& b);
Trs inverse(const Trs& t);

/// Throws NonConformalMatrix unless `m` is a translation * rotation *
/// positive uniform scale within 1e-6 (shear, reflection, non-uniform scale
/// and projective rows are rejected).
Trs matrix_to_trs(const Mat4& m);
/// matrix_to_trs(m).to_versor().
cga::Versor matrix_to_versor(const Mat4& m);

}  // namespace cgaskin
