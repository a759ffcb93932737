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

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cgaskin/transform.hpp"

namespace cgaskin {

using Face = std::array<int, 3>;

/// Triangle mesh. Counterclockwise winding gives the outward normal.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
};

/// Undirected edge with lo < hi.
struct EdgeKey {
  int lo = 0;
  int hi = 0;

  EdgeKey() = default;
  EdgeKey(int a, int b) : lo(a < b ? a : b), hi(a < b ? b : a) {}
  bool operator==(const EdgeKey&) const = default;
  auto operator<=>(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.lo)) << 32) |
        static_cast<std::uint32_t>(e.hi));
  }
};

/// Edge -> incident faces, in increasing face order.
class EdgeMap {
 public:
  explicit EdgeMap(const Mesh& mesh);

  std::span<const int> faces_of(const EdgeKey& e) const;
  /// The face across `e` from `face`, or -1 on a boundary edge.
  int opposite_face(const EdgeKey& e, int face) const;
  /// Unique edges sorted by key.
  const std::vector<EdgeKey>& edges() const { return edges_; }

 private:
  std::unordered_map<EdgeKey, std::vector<int>, EdgeKeyHash> faces_;
  std::vector<EdgeKey> edges_;
};

/// Throws MeshError when a face index is out of range, a face repeats a
/// vertex, an edge has more than two faces, adjacent faces disagree in
/// orientation, or a vertex's faces do not form a single fan.
void validate_mesh(const Mesh& mesh);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
double surface_area(const Mesh& mesh);
double bbox_diagonal(const Mesh& mesh);

struct TopologySummary {
  int vertices = 0;  // referenced by at least one face
  int edges = 0;
  int faces = 0;
  int boundary_edges = 0;
  int boundary_loops = 0;
  int components = 0;
  int euler_characteristic() const { return vertices - edges + faces; }
  /// Sum of component genera assuming an orientable surface:
  /// chi = 2c - 2g - b.
  int genus() const {
    return (2 * components - boundary_loops - euler_characteristic()) / 2;
  }
};

TopologySummary summarize_topology(const Mesh& mesh);

}  // namespace cgaskin
