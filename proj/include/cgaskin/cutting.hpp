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

#include <cstdint>
#include <vector>

#include "cgaskin/reskin.hpp"
#include "cgaskin/rig.hpp"

namespace cgaskin {

/// Oriented plane {p : normal . p = d}; `normal` is unit length.
struct Plane {
  Vec3 normal = Vec3::UnitZ();
  double d = 0.0;

  /// Throws ParameterError unless |normal| is 1 within 1e-9.
  static Plane make(const Vec3& normal, double d);
  /// Normalises `normal` (and scales d accordingly).
  static Plane from_normal(const Vec3& normal, double d);
  /// IPNS grade-1 element n + d n_inf; up(p) . it = normal . p - d.
  cga::Multivector ipns() const;
  double signed_distance(const Vec3& p) const { return normal.dot(p) - d; }
};

enum class Side : std::int8_t { kNeg = -1, kOn = 0, kPos = 1 };

/// 1e-9 times the mesh's bounding-box diagonal.
double plane_tolerance(const Mesh& mesh);

/// Sign of up(v) . plane with |.| < eps mapped to On.
std::vector<Side> classify_vertices(const Mesh& mesh, const Plane& plane, double eps,
                                    bool parallel = true);

struct CutPoint {
  Vec3 position;
  EdgeKey edge;          // host edge (lo, hi)
  double lambda = 0.0;   // position = (1 - lambda) v_lo + lambda v_hi
  int vertex = -1;       // index in the augmented vertex list
  InfluenceList influences;
};

/// One CutPoint per edge whose endpoints are on strictly opposite sides
/// after On vertices are moved 2 eps along the normal, sorted by edge. New
/// vertex indices continue from mesh.vertex_count().
std::vector<CutPoint> compute_cut_points(const Mesh& mesh,
                                         const std::vector<InfluenceList>& weights,
                                         const Plane& plane, double eps,
                                         const WeightFilter& filter = {},
                                         bool parallel = true);

struct SidedFace {
  Face face;
  Side side = Side::kPos;  // never On
  int parent = -1;         // index of the original face
};

/// Uncut faces are passed through; each crossed face becomes one triangle on
/// its lone vertex's side and two tiling the quad on the other, the quad
/// split along its shorter diagonal.
std::vector<SidedFace> retriangulate_cut_faces(const Mesh& mesh, const std::vector<Side>& sides,
                                               const std::vector<CutPoint>& points);

struct CutChain {
  std::vector<int> points;  // indices into CutResult::points
  bool closed = false;
};

/// Chains of cut points linked through the crossed faces. Open chains come
/// first (from their start points), then closed ones from their lowest
/// point. Throws NonManifoldCut for a host edge with more than two faces.
std::vector<CutChain> order_cut_polyline(const Mesh& mesh, const std::vector<Side>& sides,
                                         const std::vector<CutPoint>& points);

struct CutResult {
  RiggedModel m1;  // negative side (the whole model when the cut misses)
  RiggedModel m2;  // positive side
  std::vector<CutPoint> points;
  std::vector<CutChain> chains;
  /// Piece vertex -> augmented index (< original vertex count: original
  /// vertex; otherwise points[index - count]).
  std::vector<int> m1_origin, m2_origin;
  int cut_faces = 0;
  bool swapped = false;  // sides exchanged because the negative side was empty
};

struct CutOptions {
  WeightFilter filter;
  bool parallel = true;
};

CutResult cut(const RiggedModel& model, const Plane& plane, const CutOptions& options = {});

/// Disjoint union of two models sharing one skeleton (the first one's).
RiggedModel merge_models(const RiggedModel& a, const RiggedModel& b);

}  // namespace cgaskin
