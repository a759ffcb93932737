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

#include "cgaskin/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cgaskin {
namespace {

constexpr double kEdgeTolerance = 1e-10;

bool hit_order(const SegmentHit& x, const SegmentHit& y) {
  return x.t != y.t ? x.t < y.t : x.face < y.face;
}

bool segment_hits_box(const Vec3& a, const Vec3& inv_dir, const Eigen::AlignedBox3d& box) {
  double t0 = -1e-9, t1 = 1.0 + 1e-9;
  for (int k = 0; k < 3; ++k) {
    double lo = (box.min()[k] - a[k]) * inv_dir[k];
    double hi = (box.max()[k] - a[k]) * inv_dir[k];
    if (std::isnan(lo) || std::isnan(hi)) {
      // Zero direction component with the origin on a slab face.
      if (a[k] < box.min()[k] || a[k] > box.max()[k]) return false;
      continue;
    }
    if (lo > hi) std::swap(lo, hi);
    t0 = std::max(t0, lo);
    t1 = std::min(t1, hi);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

std::optional<SegmentHit> intersect_segment_triangle(const Vec3& a, const Vec3& b,
                                                     const Vec3& p0, const Vec3& p1,
                                                     const Vec3& p2) {
  const Vec3 dir = b - a;
  const Vec3 e1 = p1 - p0, e2 = p2 - p0;
  const Vec3 pv = dir.cross(e2);
  const double det = e1.dot(pv);
  if (std::abs(det) <= 1e-14 * e1.norm() * e2.norm() * dir.norm()) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = a - p0;
  const double u = s.dot(pv) * inv;
  if (u < -kEdgeTolerance || u > 1.0 + kEdgeTolerance) return std::nullopt;
  const Vec3 qv = s.cross(e1);
  const double v = dir.dot(qv) * inv;
  if (v < -kEdgeTolerance || u + v > 1.0 + kEdgeTolerance) return std::nullopt;
  const double t = e2.dot(qv) * inv;
  if (t < 0.0 || t > 1.0) return std::nullopt;
  return SegmentHit{-1, t, u, v};
}

std::vector<SegmentHit> scan_segment_hits(const Mesh& mesh, const Vec3& a, const Vec3& b,
                                          bool parallel) {
  const int nf = mesh.face_count();
  std::vector<SegmentHit> per_face(static_cast<std::size_t>(nf));
#pragma omp parallel for schedule(static) if (parallel)
  for (int f = 0; f < nf; ++f) {
    const Face& t = mesh.faces[f];
    const auto hit = intersect_segment_triangle(a, b, mesh.vertices[t[0]],
                                                mesh.vertices[t[1]], mesh.vertices[t[2]]);
    if (hit) {
      per_face[f] = *hit;
      per_face[f].face = f;
    }
  }
  std::vector<SegmentHit> hits;
  for (const SegmentHit& h : per_face) {
    if (h.face >= 0) hits.push_back(h);
  }
  std::sort(hits.begin(), hits.end(), hit_order);
  return hits;
}

Bvh::Bvh(const Mesh& mesh, int leaf_size) : mesh_(&mesh) {
  const int nf = mesh.face_count();
  order_.resize(static_cast<std::size_t>(nf));
  face_boxes_.resize(static_cast<std::size_t>(nf));
  std::vector<Vec3> centroids(static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    order_[f] = f;
    Eigen::AlignedBox3d box;
    for (int v : mesh.faces[f]) box.extend(mesh.vertices[v]);
    const double pad = 1e-8 * box.diagonal().norm() + 1e-300;
    box.min().array() -= pad;
    box.max().array() += pad;
    face_boxes_[f] = box;
    centroids[f] = box.center();
  }
  nodes_.reserve(static_cast<std::size_t>(2 * nf / std::max(1, leaf_size) + 1));
  if (nf > 0) build(0, nf, centroids, std::max(1, leaf_size));
}

int Bvh::build(int first, int count, std::vector<Vec3>& centroids, int leaf_size) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  Eigen::AlignedBox3d box, centre_box;
  for (int i = first; i < first + count; ++i) {
    box.extend(face_boxes_[order_[i]]);
    centre_box.extend(centroids[order_[i]]);
  }
  nodes_[id].box = box;
  if (count <= leaf_size) {
    nodes_[id].first = first;
    nodes_[id].count = count;
    return id;
  }
  int axis = 0;
  centre_box.sizes().maxCoeff(&axis);
  const int mid = first + count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + mid, order_.begin() + first + count,
                   [&](int x, int y) {
                     const double cx = centroids[x][axis], cy = centroids[y][axis];
                     return cx != cy ? cx < cy : x < y;
                   });
  const int left = build(first, mid - first, centroids, leaf_size);
  const int right = build(mid, first + count - mid, centroids, leaf_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<SegmentHit> Bvh::segment_hits(const Vec3& a, const Vec3& b) const {
  std::vector<SegmentHit> hits;
  if (nodes_.empty()) return hits;
  const Vec3 dir = b - a;
  const Vec3 inv_dir = dir.cwiseInverse();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!segment_hits_box(a, inv_dir, node.box)) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int f = order_[i];
        const Face& t = mesh_->faces[f];
        const auto hit = intersect_segment_triangle(
            a, b, mesh_->vertices[t[0]], mesh_->vertices[t[1]], mesh_->vertices[t[2]]);
        if (hit) {
          hits.push_back(*hit);
          hits.back().face = f;
        }
      }
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  std::sort(hits.begin(), hits.end(), hit_order);
  return hits;
}

}  // namespace cgaskin
