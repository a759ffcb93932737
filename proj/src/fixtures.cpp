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

#include "cgaskin/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

double smoothstep(double edge0, double edge1, double x) {
  const double t = std::clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

InfluenceList tube_weights(const TubeParams& p, double x) {
  const double se = smoothstep(p.elbow_x - p.elbow_blend, p.elbow_x + p.elbow_blend, x);
  const double sw = smoothstep(p.wrist_x - p.wrist_blend, p.wrist_x + p.wrist_blend, x);
  InfluenceList list = {{0, 1.0 - se}, {1, se - sw}, {2, sw}};
  return canonical_influences(std::move(list));
}

}  // namespace

TubeParams cylinders_params() {
  TubeParams p;
  p.seams = {{0, 47}, {1, 47}, {2, 15}, {5, 47}, {6, 47}, {7, 47}};
  return p;
}

TubeParams arm_params() {
  TubeParams p;
  p.segments = 23;
  p.rings = 110;
  p.length = 60.0;
  p.radius = 3.5;
  p.elbow_x = 30.0;
  p.wrist_x = 52.0;
  p.bend_degrees = 25.0;
  p.seams = {{0, 109}, {5, 109}, {10, 109}, {15, 109}, {20, 102}};
  p.cap = CapStyle::kFan;
  p.dome = 0.5;
  return p;
}

RiggedModel make_tube_rig(const TubeParams& p) {
  const int S = p.segments, R = p.rings;
  if (S < 3 || R < 2) throw ParameterError("tube needs >= 3 segments and >= 2 rings");
  std::vector<int> seam_length(static_cast<std::size_t>(S), 0);
  for (const Seam& s : p.seams) {
    if (s.column < 0 || s.column >= S || s.length < 0 || s.length > R - 1) {
      throw ParameterError("seam out of range");
    }
    seam_length[s.column] = s.length;
  }

  RiggedModel model;
  model.bones.resize(3);
  for (int i = 0; i < 3; ++i) model.bones[i].id = i;
  model.bones[1].parent = 0;
  model.bones[1].local_bind =
      compose(Trs::from_translation({p.elbow_x, 0.0, 0.0}),
              Trs::from_axis_angle(Vec3::UnitZ(), p.bend_degrees * std::numbers::pi / 180.0));
  model.bones[2].parent = 1;
  model.bones[2].local_bind = Trs::from_translation({p.wrist_x - p.elbow_x, 0.0, 0.0});
  set_offsets_from_bind(model);

  // Straight tube first; the elbow rotation about the joint bends it.
  const Trs bend = compose(model.bones[1].local_bind,
                           Trs::from_translation({-p.elbow_x, 0.0, 0.0}));
  auto place = [&](const Vec3& straight, const InfluenceList& w) {
    double w0 = 0.0;
    for (const Influence& inf : w) {
      if (inf.bone == 0) w0 = inf.weight;
    }
    return Vec3(w0 * straight + (1.0 - w0) * bend.apply(straight));
  };

  // left[r][c]: copy used by faces of column c; right[r][c]: copy used by
  // faces of column c - 1. They differ only on seams.
  std::vector<std::vector<int>> left(R, std::vector<int>(S)), right = left;
  Mesh& mesh = model.mesh;
  for (int r = 0; r < R; ++r) {
    const double x = p.length * r / (R - 1);
    const double rad = p.radius * (1.0 - p.taper * x / p.length);
    const InfluenceList w = tube_weights(p, x);
    for (int c = 0; c < S; ++c) {
      const double theta = 2.0 * std::numbers::pi * c / S;
      const Vec3 pos = place({x, rad * std::cos(theta), rad * std::sin(theta)}, w);
      left[r][c] = right[r][c] = mesh.vertex_count();
      mesh.vertices.push_back(pos);
      model.weights.push_back(w);
      if (r < seam_length[c]) {
        right[r][c] = mesh.vertex_count();
        mesh.vertices.push_back(pos);
        model.weights.push_back(w);
      }
    }
  }

  for (int r = 0; r + 1 < R; ++r) {
    for (int c = 0; c < S; ++c) {
      const int cn = (c + 1) % S;
      const int a = left[r][c], b = right[r][cn];
      const int cc = right[r + 1][cn], d = left[r + 1][c];
      mesh.faces.push_back({a, b, cc});
      mesh.faces.push_back({a, cc, d});
    }
  }

  const int last = R - 1;
  if (p.cap == CapStyle::kPolygon) {
    for (int c = 1; c + 1 < S; ++c) {
      mesh.faces.push_back({left[last][0], left[last][c], left[last][c + 1]});
    }
  } else {
    const int centre = mesh.vertex_count();
    const Vec3 tip(p.length + p.dome, 0.0, 0.0);
    const InfluenceList w = tube_weights(p, tip.x());
    mesh.vertices.push_back(place(tip, w));
    model.weights.push_back(w);
    for (int c = 0; c < S; ++c) {
      mesh.faces.push_back({centre, left[last][c], left[last][(c + 1) % S]});
    }
  }

  validate_model(model);
  return model;
}

RiggedModel make_cylinders_fixture() { return make_tube_rig(cylinders_params()); }

RiggedModel make_arm_fixture() { return make_tube_rig(arm_params()); }

RiggedModel make_fixture(const std::string& name) {
  if (name == "cylinders") return make_cylinders_fixture();
  if (name == "arm") return make_arm_fixture();
  if (name == "cylinders_seamless") {
    TubeParams p = cylinders_params();
    p.seams.clear();
    return make_tube_rig(p);
  }
  throw ParameterError("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() { return {"cylinders", "arm", "cylinders_seamless"}; }

}  // namespace cgaskin
