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

#include "cgaskin/transform.hpp"

#include <cmath>

#include "cgaskin/errors.hpp"

namespace cgaskin {

Trs Trs::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw ParameterError("rotation axis must be non-zero");
  Trs t;
  t.rotation = Quat(Eigen::AngleAxisd(angle, axis / n));
  return t;
}

cga::Versor Trs::to_versor() const {
  return cga::make_translator(translation) *
         cga::rotor_from_quaternion(rotation) * cga::make_dilator(scale);
}

Mat4 Trs::to_matrix() const {
  Mat4 m = Mat4::Identity();
  m.block<3, 3>(0, 0) = scale * rotation.toRotationMatrix();
  m.block<3, 1>(0, 3) = translation;
  return m;
}

Trs compose(const Trs& a, const Trs& b) {
  Trs r;
  r.translation = a.translation + a.scale * (a.rotation * b.translation);
  r.rotation = a.rotation * b.rotation;
  r.scale = a.scale * b.scale;
  return r;
}

Trs inverse(const Trs& t) {
  Trs r;
  r.rotation = t.rotation.conjugate();
  r.scale = 1.0 / t.scale;
  r.translation = -r.scale * (r.rotation * t.translation);
  return r;
}

Trs matrix_to_trs(const Mat4& m) {
  if (!m.allFinite()) throw NonConformalMatrix("matrix has non-finite entries");
  if (m.row(3).head<3>().cwiseAbs().maxCoeff() > 1e-6 ||
      std::abs(m(3, 3) - 1.0) > 1e-6) {
    throw NonConformalMatrix("matrix bottom row is not (0, 0, 0, 1)");
  }
  const Eigen::Matrix3d a = m.block<3, 3>(0, 0);
  const double det = a.determinant();
  if (!(det > 0.0)) {
    throw NonConformalMatrix("matrix is singular or contains a reflection");
  }
  const double s = std::cbrt(det);
  const Eigen::Matrix3d r = a / s;
  const double ortho_err =
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (ortho_err > 1e-6) {
    throw NonConformalMatrix(
        "matrix contains shear or non-uniform scale (orthogonality error " +
        std::to_string(ortho_err) + ")");
  }
  Trs t;
  t.translation = m.block<3, 1>(0, 3);
  t.rotation = Quat(r).normalized();
  t.scale = s;
  return t;
}

cga::Versor matrix_to_versor(const Mat4& m) { return matrix_to_trs(m).to_versor(); }

}  // namespace cgaskin
