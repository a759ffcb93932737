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

#include <vector>

#include "cgaskin/bvh.hpp"
#include "cgaskin/cutting.hpp"
#include "cgaskin/reskin.hpp"
#include "cgaskin/rig.hpp"

namespace cgaskin {

/// Scalpel blade at one instant: the segment from tip to tail.
struct ScalpelState {
  double time = 0.0;
  Vec3 tip = Vec3::Zero();
  Vec3 tail = Vec3::Zero();
};

/// A point on the surface: inside face `bary.face`, or an existing mesh
/// vertex when `vertex` >= 0.
struct TearAnchor {
  Vec3 point = Vec3::Zero();
  BaryCoord bary;
  int vertex = -1;
};

/// Where the tear plane crosses an edge between two consecutive path faces.
struct TearCrossing {
  Vec3 position;
  EdgeKey edge;
  double lambda = 0.0;  // position = (1 - lambda) v_lo + lambda v_hi
};

struct TearPath {
  TearAnchor from, to;
  Plane plane;
  std::vector<TearCrossing> intermediates;  // Q_1 .. Q_m in walk order
  std::vector<int> faces;                   // m + 1 faces, from's first
  double projection_distance = 0.0;        // |to moved onto the plane|
  int intersection_points() const { return 2 + static_cast<int>(intermediates.size()); }
};

/// Two coincident vertices created along a tear; open_tear moves `pos` by
/// +delta * normal and `neg` by -delta * normal.
struct DuplicatePair {
  int pos = -1;
  int neg = -1;
  Vec3 normal = Vec3::UnitZ();
};

struct TornModel {
  RiggedModel model;
  std::vector<DuplicatePair> duplicates;
  std::vector<int> anchors;  // vertex indices of the inserted anchors
};

/// The single transversal crossing of the scalpel with the surface.
/// Crossings at the same parameter (through a shared edge or vertex) count
/// once, keeping the lowest face id. Barycentric coordinates are clamped to
/// at least 1e-9 so the anchor is strictly inside its face. Throws
/// NoIntersection or AmbiguousIntersection. `bvh`, when given, must have
/// been built from `mesh`.
TearAnchor scalpel_hit(const Mesh& mesh, const ScalpelState& scalpel,
                       const Bvh* bvh = nullptr, bool parallel = true);

/// Plane through `anchor` and both blade endpoints, normal
/// (tip - S) x (tail - S). Throws DegenerateTearStep when collinear.
Plane build_tear_plane(const Vec3& anchor, const ScalpelState& next, double tolerance = 0.0);

/// Face walk from `from` to `to` across edges cut by the plane. Tries both
/// directions, nearest crossing to `to` first. Throws PathNotFound.
TearPath trace_surface_path(const Mesh& mesh, const Plane& plane, const TearAnchor& from,
                            const TearAnchor& to);

/// Inserts the anchors and the crossings (each crossing twice, one copy per
/// side of the plane) and splits the path faces. Weights come from the
/// corner / edge weights.
TornModel apply_tear(const RiggedModel& model, const TearPath& path,
                     const WeightFilter& filter = {});

/// Moves each duplicate pair apart by delta along its normal.
RiggedModel open_tear(const RiggedModel& torn, const std::vector<DuplicatePair>& duplicates,
                      double delta);

struct TearOptions {
  bool accelerate = false;  // BVH for scalpel hits
  bool parallel = true;     // OpenMP linear scan when not accelerated
  WeightFilter filter;
};

struct TearResult {
  TornModel torn;  // before opening
  std::vector<TearPath> steps;
  int intersection_points = 0;  // anchors + crossings
  int duplicated_vertices = 0;
  double max_projection_distance = 0.0;
};

/// Chains the scalpel states pairwise on the progressively torn mesh. Interior
/// anchors that end up pinching two tear openings are split in two and open
/// along the mean of the adjacent plane normals.
TearResult tear(const RiggedModel& model, const std::vector<ScalpelState>& scalpel,
                const TearOptions& options = {});

/// 1% of the rest bounding-box diagonal.
double default_tear_opening(const Mesh& mesh);

}  // namespace cgaskin
