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

#include "cgaskin/mesh.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string face_str(const Mesh& mesh, int f) {
  const Face& t = mesh.faces[f];
  return "face " + std::to_string(f) + " (" + std::to_string(t[0]) + ", " +
         std::to_string(t[1]) + ", " + std::to_string(t[2]) + ")";
}

}  // namespace

EdgeMap::EdgeMap(const Mesh& mesh) {
  faces_.reserve(mesh.faces.size() * 2);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      faces_[EdgeKey(t[k], t[(k + 1) % 3])].push_back(f);
    }
  }
  edges_.reserve(faces_.size());
  for (const auto& [e, fs] : faces_) edges_.push_back(e);
  std::sort(edges_.begin(), edges_.end());
}

std::span<const int> EdgeMap::faces_of(const EdgeKey& e) const {
  const auto it = faces_.find(e);
  if (it == faces_.end()) return {};
  return it->second;
}

int EdgeMap::opposite_face(const EdgeKey& e, int face) const {
  const auto fs = faces_of(e);
  if (fs.size() != 2) return -1;
  return fs[0] == face ? fs[1] : fs[0];
}

void validate_mesh(const Mesh& mesh) {
  const int nv = mesh.vertex_count();
  for (int v = 0; v < nv; ++v) {
    if (!mesh.vertices[v].allFinite()) {
      throw MeshError("vertex " + std::to_string(v) + " is not finite");
    }
  }
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv) {
        throw MeshError(face_str(mesh, f) + " has an index out of range");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw MeshError(face_str(mesh, f) + " is degenerate");
    }
  }

  // Directed half-edges must be unique: a repeat means either a third face
  // on the edge or two neighbours with opposite orientation.
  std::unordered_map<EdgeKey, std::array<int, 2>, EdgeKeyHash> half;
  half.reserve(mesh.faces.size() * 2);
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& t = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      auto [it, inserted] = half.try_emplace(EdgeKey(a, b), std::array<int, 2>{-1, -1});
      // slot 0: lo->hi direction, slot 1: hi->lo.
      const int slot = a < b ? 0 : 1;
      if (it->second[slot] != -1) {
        throw MeshError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                        ") is shared by " + face_str(mesh, it->second[slot]) +
                        " and " + face_str(mesh, f) +
                        " with the same direction (non-manifold or "
                        "inconsistently oriented)");
      }
      it->second[slot] = f;
    }
  }

  // Each vertex's faces must form one fan.
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(nv));
  for (int f = 0; f < mesh.face_count(); ++f) {
    for (int v : mesh.faces[f]) incident[v].push_back(f);
  }
  for (int v = 0; v < nv; ++v) {
    const auto& fs = incident[v];
    if (fs.size() <= 1) continue;
    UnionFind uf(static_cast<int>(fs.size()));
    std::map<int, int> first_by_neighbor;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      for (int u : mesh.faces[fs[i]]) {
        if (u == v) continue;
        auto [it, inserted] = first_by_neighbor.try_emplace(u, i);
        if (!inserted) uf.unite(i, it->second);
      }
    }
    int groups = 0;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) groups += uf.find(i) == i;
    if (groups != 1) {
      throw MeshError("vertex " + std::to_string(v) + " is non-manifold (" +
                      std::to_string(groups) + " separate face fans)");
    }
  }
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double surface_area(const Mesh& mesh) {
  double area = 0.0;
  for (const Face& t : mesh.faces) {
    area += triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]],
                          mesh.vertices[t[2]]);
  }
  return area;
}

double bbox_diagonal(const Mesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  Vec3 lo = mesh.vertices.front(), hi = lo;
  for (const Vec3& p : mesh.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

TopologySummary summarize_topology(const Mesh& mesh) {
  TopologySummary s;
  const int nv = mesh.vertex_count();
  s.faces = mesh.face_count();
  std::vector<char> used(static_cast<std::size_t>(nv), 0);
  UnionFind uf(nv);
  for (const Face& t : mesh.faces) {
    for (int v : t) used[v] = 1;
    uf.unite(t[0], t[1]);
    uf.unite(t[1], t[2]);
  }
  for (int v = 0; v < nv; ++v) {
    if (!used[v]) continue;
    ++s.vertices;
    if (uf.find(v) == v) ++s.components;
  }

  // Boundary half-edges keep the direction they have in their face.
  std::unordered_map<EdgeKey, int, EdgeKeyHash> count;
  for (const Face& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) ++count[EdgeKey(t[k], t[(k + 1) % 3])];
  }
  s.edges = static_cast<int>(count.size());
  std::unordered_map<int, int> next;
  for (const Face& t : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      if (count[EdgeKey(a, b)] == 1) {
        next[a] = b;
        ++s.boundary_edges;
      }
    }
  }
  std::unordered_map<int, char> seen;
  std::vector<int> starts;
  starts.reserve(next.size());
  for (const auto& [a, b] : next) starts.push_back(a);
  std::sort(starts.begin(), starts.end());
  for (int start : starts) {
    if (seen[start]) continue;
    ++s.boundary_loops;
    int v = start;
    while (!seen[v]) {
      seen[v] = 1;
      const auto it = next.find(v);
      if (it == next.end()) break;
      v = it->second;
    }
  }
  return s;
}

}  // namespace cgaskin
