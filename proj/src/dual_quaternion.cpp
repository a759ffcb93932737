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

#include "cgaskin/dual_quaternion.hpp"

#include "cgaskin/errors.hpp"

namespace cgaskin {

DualQuaternion DualQuaternion::from_rigid(const Quat& rotation, const Vec3& translation) {
  DualQuaternion q;
  q.real = rotation.coeffs();
  const Quat t(0.0, translation.x(), translation.y(), translation.z());
  q.dual = 0.5 * (t * rotation).coeffs();
  return q;
}

Quat DualQuaternion::rotation() const {
  const double n = real.norm();
  if (n < 1e-12) throw DegenerateBlend("dual quaternion blend has a zero real part");
  return Quat(real / n);
}

Vec3 DualQuaternion::translation() const {
  const double n2 = real.squaredNorm();
  if (n2 < 1e-24) throw DegenerateBlend("dual quaternion blend has a zero real part");
  const Quat r(real), d(dual);
  return 2.0 * (d * r.conjugate()).vec() / n2;
}

Vec3 DualQuaternion::transform_point(const Vec3& p) const {
  return rotation() * p + translation();
}

}  // namespace cgaskin
