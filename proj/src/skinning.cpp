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

#include "cgaskin/skinning.hpp"

#include <climits>
#include <cmath>
#include <string>

#include "cgaskin/dual_quaternion.hpp"
#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

void check_pose(const RiggedModel& model, const Pose& pose) {
  const std::size_t n = model.bones.size();
  if (pose.global.size() != n || pose.versors.size() != n || pose.matrices.size() != n) {
    throw ParameterError("pose does not cover every bone of the model");
  }
  if (model.weights.size() != model.mesh.vertices.size()) {
    throw ParameterError("model has " + std::to_string(model.weights.size()) +
                         " weight lists for " +
                         std::to_string(model.mesh.vertices.size()) + " vertices");
  }
}

// Action of the sandwich F X F^-1 on grade-1 elements, as a matrix over the
// null-basis coordinates (e1, e2, e3, no, ninf). The sandwich is linear in
// X, so the columns are the images of the five basis vectors. In this basis
// the large 1/2 |v|^2 coordinate only feeds the ninf column, whose Euclidean
// and no rows vanish for a similarity, so down-projection does not cancel.
Mat5 sandwich_matrix(const cga::Versor& f) {
  const cga::Versor f_inv = cga::versor_inverse(f);
  const cga::Multivector inputs[5] = {
      cga::Multivector::basis(cga::blade::kE1), cga::Multivector::basis(cga::blade::kE2),
      cga::Multivector::basis(cga::blade::kE3), cga::n_o(), cga::n_inf()};
  Mat5 m;
  for (int j = 0; j < 5; ++j) {
    const cga::Multivector image = cga::apply_versor(f, f_inv, inputs[j]);
    const double ep = image[cga::blade::kEp], em = image[cga::blade::kEm];
    m(0, j) = image[cga::blade::kE1];
    m(1, j) = image[cga::blade::kE2];
    m(2, j) = image[cga::blade::kE3];
    m(3, j) = em - ep;          // no
    m(4, j) = 0.5 * (ep + em);  // ninf
  }
  return m;
}

Vec5 up5(const Vec3& v) {
  Vec5 x;
  x << v.x(), v.y(), v.z(), 1.0, 0.5 * v.squaredNorm();
  return x;
}

// Returns NaN on a point at infinity so the caller reports the vertex.
Vec3 down5(const Vec5& x) {
  if (std::abs(x[3]) < 1e-14) return Vec3::Constant(std::nan(""));
  return x.head<3>() / x[3];
}

void throw_if_failed(int bad, const char* backend) {
  if (bad != INT_MAX) {
    throw NumericalFailure(std::string(backend) + " skinning produced a non-finite "
                           "position at vertex " + std::to_string(bad));
  }
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kCga: return "cga";
    case Backend::kLbs: return "lbs";
    case Backend::kDq: return "dq";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "cga") return Backend::kCga;
  if (name == "lbs") return Backend::kLbs;
  if (name == "dq") return Backend::kDq;
  throw ParameterError("unknown backend '" + std::string(name) + "' (cga|lbs|dq)");
}

SkinnedFrame skin_cga(const RiggedModel& model, const Pose& pose,
                      const SkinOptions& options) {
  check_pose(model, pose);
  std::vector<Mat5> bone_map(model.bones.size());
  for (const Bone& b : model.bones) {
    bone_map[b.id] = sandwich_matrix(pose.versors[b.id] * b.offset_versor());
  }

  SkinnedFrame frame{pose.time, Backend::kCga, {}};
  const int nv = model.mesh.vertex_count();
  frame.positions.resize(static_cast<std::size_t>(nv));
  const bool per_term = options.project_per_term;
  int bad = INT_MAX;
#pragma omp parallel for schedule(static) reduction(min : bad) if (options.parallel)
  for (int v = 0; v < nv; ++v) {
    const Vec5 x = up5(model.mesh.vertices[v]);
    Vec3 p = Vec3::Zero();
    Vec5 sum = Vec5::Zero();
    for (const Influence& inf : model.weights[v]) {
      const Vec5 y = bone_map[inf.bone] * x;
      if (per_term) {
        p += inf.weight * down5(y);
      } else {
        sum += inf.weight * y;
      }
    }
    if (!per_term) p = down5(sum);
    frame.positions[v] = p;
    if (!p.allFinite()) bad = std::min(bad, v);
  }
  throw_if_failed(bad, "CGA");
  return frame;
}

SkinnedFrame skin_lbs(const RiggedModel& model, const Pose& pose,
                      const SkinOptions& options) {
  check_pose(model, pose);
  std::vector<Mat4> bone_map(model.bones.size());
  for (const Bone& b : model.bones) {
    bone_map[b.id] = pose.matrices[b.id] * b.offset.to_matrix();
  }

  SkinnedFrame frame{pose.time, Backend::kLbs, {}};
  const int nv = model.mesh.vertex_count();
  frame.positions.resize(static_cast<std::size_t>(nv));
  int bad = INT_MAX;
#pragma omp parallel for schedule(static) reduction(min : bad) if (options.parallel)
  for (int v = 0; v < nv; ++v) {
    const Vec3& rest = model.mesh.vertices[v];
    Vec3 p = Vec3::Zero();
    for (const Influence& inf : model.weights[v]) {
      const Mat4& m = bone_map[inf.bone];
      p += inf.weight * (m.topLeftCorner<3, 3>() * rest + m.topRightCorner<3, 1>());
    }
    frame.positions[v] = p;
    if (!p.allFinite()) bad = std::min(bad, v);
  }
  throw_if_failed(bad, "LBS");
  return frame;
}

SkinnedFrame skin_dq(const RiggedModel& model, const Pose& pose,
                     const SkinOptions& options) {
  check_pose(model, pose);
  std::vector<DualQuaternion> rigid(model.bones.size());
  std::vector<double> scale(model.bones.size());
  for (const Bone& b : model.bones) {
    const Trs f = compose(pose.global[b.id], b.offset);
    rigid[b.id] = DualQuaternion::from_rigid(f.rotation, f.translation);
    scale[b.id] = f.scale;
  }

  SkinnedFrame frame{pose.time, Backend::kDq, {}};
  const int nv = model.mesh.vertex_count();
  frame.positions.resize(static_cast<std::size_t>(nv));
  int bad = INT_MAX;
#pragma omp parallel for schedule(static) reduction(min : bad) if (options.parallel)
  for (int v = 0; v < nv; ++v) {
    const InfluenceList& w = model.weights[v];
    const Influence* pivot = &w.front();
    for (const Influence& inf : w) {
      if (inf.weight > pivot->weight) pivot = &inf;
    }
    const Eigen::Vector4d& ref = rigid[pivot->bone].real;
    DualQuaternion blend;
    blend.real.setZero();
    double s = 0.0;
    for (const Influence& inf : w) {
      const DualQuaternion& q = rigid[inf.bone];
      blend.add_scaled(q, q.real.dot(ref) < 0.0 ? -inf.weight : inf.weight);
      s += inf.weight * scale[inf.bone];
    }
    const double n2 = blend.real.squaredNorm();
    Vec3 p = Vec3::Constant(std::nan(""));
    if (n2 >= 1e-24) p = blend.transform_point(s * model.mesh.vertices[v]);
    frame.positions[v] = p;
    if (!p.allFinite()) bad = std::min(bad, v);
  }
  throw_if_failed(bad, "dual-quaternion");
  return frame;
}

SkinnedFrame skin(const RiggedModel& model, const Pose& pose, Backend backend,
                  const SkinOptions& options) {
  switch (backend) {
    case Backend::kCga: return skin_cga(model, pose, options);
    case Backend::kLbs: return skin_lbs(model, pose, options);
    case Backend::kDq: return skin_dq(model, pose, options);
  }
  throw ParameterError("unknown backend");
}

Mesh posed_mesh(const RiggedModel& model, const SkinnedFrame& frame) {
  if (frame.positions.size() != model.mesh.vertices.size()) {
    throw ParameterError("frame does not match the model's vertex count");
  }
  return Mesh{frame.positions, model.mesh.faces};
}

ErrorReport compare_frames(const RiggedModel& model, const SkinnedFrame& reference,
                           const SkinnedFrame& test) {
  const std::size_t n = model.mesh.vertices.size();
  if (reference.positions.size() != n || test.positions.size() != n) {
    throw ParameterError("frames do not match the model's vertex count");
  }
  ErrorReport r;
  r.diagonal = bbox_diagonal(model.mesh);
  const double scale = r.diagonal > 0.0 ? 1.0 / r.diagonal : 1.0;
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const double e = (reference.positions[v] - test.positions[v]).norm() * scale;
    total += e;
    if (r.worst_vertex < 0 || e > r.linf) {
      r.linf = e;
      r.worst_vertex = static_cast<int>(v);
    }
  }
  r.mean = n > 0 ? total / static_cast<double>(n) : 0.0;
  return r;
}

ErrorReport compare_backends(const RiggedModel& model, const Pose& pose,
                             Backend reference, Backend test,
                             const SkinOptions& options) {
  return compare_frames(model, skin(model, pose, reference, options),
                        skin(model, pose, test, options));
}

}  // namespace cgaskin
