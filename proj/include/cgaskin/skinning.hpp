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
#include <string_view>
#include <vector>

#include "cgaskin/animation.hpp"

namespace cgaskin {

enum class Backend { kCga, kLbs, kDq };

std::string_view backend_name(Backend b);
/// "cga" | "lbs" | "dq"; throws ParameterError otherwise.
Backend parse_backend(std::string_view name);

struct SkinOptions {
  /// Down-project each bone's term before summing (default). When false the
  /// conformal points are summed first and projected once.
  bool project_per_term = true;
  /// Run the OpenMP kernel; false runs the same kernel on one thread.
  bool parallel = true;
};

struct SkinnedFrame {
  double time = 0.0;
  Backend backend = Backend::kCga;
  std::vector<Vec3> positions;
};

/// sum_n w_n down(F_n up(v) F_n^-1) with F_n = M_n B_n. Throws
/// NumericalFailure naming the first vertex with a non-finite result.
SkinnedFrame skin_cga(const RiggedModel& model, const Pose& pose,
                      const SkinOptions& options = {});
/// sum_n w_n T_n O_n v in homogeneous coordinates.
SkinnedFrame skin_lbs(const RiggedModel& model, const Pose& pose,
                      const SkinOptions& options = {});
/// Per bone, F_n = s_n * rigid_n. Rigid parts are blended as unit dual
/// quaternions (hemisphere aligned to the heaviest influence) and applied to
/// the point scaled by the blended s.
SkinnedFrame skin_dq(const RiggedModel& model, const Pose& pose,
                     const SkinOptions& options = {});
SkinnedFrame skin(const RiggedModel& model, const Pose& pose, Backend backend,
                  const SkinOptions& options = {});

/// Serial, unoptimised evaluations used as test oracles and bench baselines.
/// The CGA one performs both sandwich products for every vertex term.
namespace reference {
SkinnedFrame skin_cga(const RiggedModel& model, const Pose& pose,
                      bool project_per_term = true);
SkinnedFrame skin_lbs(const RiggedModel& model, const Pose& pose);
SkinnedFrame skin_dq(const RiggedModel& model, const Pose& pose);
}  // namespace reference

/// The model's faces with skinned positions.
Mesh posed_mesh(const RiggedModel& model, const SkinnedFrame& frame);

/// Distances are divided by the rest-pose bounding-box diagonal.
struct ErrorReport {
  double linf = 0.0;  // max over vertices of |a - b|
  double mean = 0.0;
  int worst_vertex = -1;
  double diagonal = 0.0;
};

ErrorReport compare_frames(const RiggedModel& model, const SkinnedFrame& reference,
                           const SkinnedFrame& test);
ErrorReport compare_backends(const RiggedModel& model, const Pose& pose,
                             Backend reference, Backend test,
                             const SkinOptions& options = {});

}  // namespace cgaskin
