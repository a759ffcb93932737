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

#include <optional>
#include <vector>

#include <Eigen/Geometry>

#include "cgaskin/mesh.hpp"

namespace cgaskin {

/// Crossing of the segment a + t (b - a), t in [0, 1], with a triangle.
/// Barycentric coordinates are (1 - u - v, u, v) over the face corners.
struct SegmentHit {
  int face = -1;
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Moller-Trumbore test with a small tolerance on the triangle edges so a
/// segment through a shared edge is reported by both faces. Segments
/// parallel to the triangle's plane do not cross it.
std::optional<SegmentHit> intersect_segment_triangle(const Vec3& a, const Vec3& b,
                                                     const Vec3& p0, const Vec3& p1,
                                                     const Vec3& p2);

/// All crossings, sorted by (t, face). Serial or OpenMP scan over faces.
std::vector<SegmentHit> scan_segment_hits(const Mesh& mesh, const Vec3& a, const Vec3& b,
                                          bool parallel = false);

/// Axis-aligned bounding volume hierarchy over a mesh's faces.
class Bvh {
 public:
  explicit Bvh(const Mesh& mesh, int leaf_size = 4);

  /// Same result as scan_segment_hits on the mesh it was built from.
  std::vector<SegmentHit> segment_hits(const Vec3& a, const Vec3& b) const;
  int node_count() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    Eigen::AlignedBox3d box;
    int left = -1, right = -1;  // children, or -1 for a leaf
    int first = 0, count = 0;   // range in order_ for leaves
  };
  int build(int first, int count, std::vector<Vec3>& centroids, int leaf_size);

  const Mesh* mesh_;
  std::vector<Node> nodes_;
  std::vector<int> order_;
  std::vector<Eigen::AlignedBox3d> face_boxes_;
};

}  // namespace cgaskin
