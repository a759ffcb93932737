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

/// A longitudinal slit in the tube: vertices of `column` on rings
/// [0, length) are split into two coincident copies.
struct Seam {
  int column = 0;
  int length = 0;
};

enum class CapStyle { kPolygon, kFan };

/// Bent three-bone tube. The tube runs along +x from x = 0 (open end) to
/// x = length (capped), then is bent at the elbow about +z by blending the
/// elbow rotation with the skin weights, so the rest shape has no crease.
struct TubeParams {
  int segments = 8;
  int rings = 48;
  double length = 48.0;
  double radius = 3.0;
  double taper = 0.15;  // radius shrinks by this fraction towards the cap
  double elbow_x = 24.0;
  double wrist_x = 42.0;
  double bend_degrees = 20.0;
  double elbow_blend = 4.0;  // half-width of the weight transition
  double wrist_blend = 3.0;
  std::vector<Seam> seams;
  CapStyle cap = CapStyle::kPolygon;
  double dome = 0.0;  // fan centre offset along +x
};

/// 634 vertices, 758 faces, 3 bones.
TubeParams cylinders_params();
/// 3069 vertices, 5037 faces, 3 bones.
TubeParams arm_params();

RiggedModel make_tube_rig(const TubeParams& params);
RiggedModel make_cylinders_fixture();
RiggedModel make_arm_fixture();

/// "cylinders", "arm", or "cylinders_seamless" (no slits). Throws
/// ParameterError for other names.
RiggedModel make_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace cgaskin
