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

#include "cgaskin/cutting.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

struct Classified {
  std::vector<double> distance;  // up(v) . plane
  std::vector<Side> side;
};

Classified classify(const Mesh& mesh, const Plane& plane, double eps, bool parallel) {
  const cga::Multivector pi = plane.ipns();
  const int nv = mesh.vertex_count();
  Classified c;
  c.distance.resize(static_cast<std::size_t>(nv));
  c.side.resize(static_cast<std::size_t>(nv));
#pragma omp parallel for schedule(static) if (parallel)
  for (int v = 0; v < nv; ++v) {
    const double d = cga::scalar_product(cga::up(mesh.vertices[v]), pi);
    c.distance[v] = d;
    c.side[v] = d >= eps ? Side::kPos : (d <= -eps ? Side::kNeg : Side::kOn);
  }
  return c;
}

// On counts as positive: it has been nudged 2 eps along the normal.
bool positive(Side s) { return s != Side::kNeg; }

std::vector<CutPoint> cut_points(const Mesh& mesh, const std::vector<InfluenceList>& weights,
                                 const Plane& plane, double eps, const Classified& c,
                                 const WeightFilter& filter, bool parallel) {
  const EdgeMap edges(mesh);
  const std::vector<EdgeKey>& keys = edges.edges();
  const int ne = static_cast<int>(keys.size());
  std::vector<char> crossing(static_cast<std::size_t>(ne), 0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < ne; ++i) {
    crossing[i] = positive(c.side[keys[i].lo]) != positive(c.side[keys[i].hi]);
  }

  auto perturbed = [&](int v, double& d) {
    if (c.side[v] == Side::kOn) {
      d = c.distance[v] + 2.0 * eps;
      return Vec3(mesh.vertices[v] + 2.0 * eps * plane.normal);
    }
    d = c.distance[v];
    return mesh.vertices[v];
  };

  std::vector<CutPoint> points;
  for (int i = 0; i < ne; ++i) {
    if (!crossing[i]) continue;
    const EdgeKey& e = keys[i];
    double d_lo = 0.0, d_hi = 0.0;
    const Vec3 p_lo = perturbed(e.lo, d_lo);
    const Vec3 p_hi = perturbed(e.hi, d_hi);
    CutPoint cp;
    cp.edge = e;
    cp.lambda = d_lo / (d_lo - d_hi);
    cp.position = (1.0 - cp.lambda) * p_lo + cp.lambda * p_hi;
    cp.vertex = mesh.vertex_count() + static_cast<int>(points.size());
    cp.influences = weight_by_edge(weights.at(e.lo), weights.at(e.hi), cp.lambda, filter);
    points.push_back(std::move(cp));
  }
  return points;
}

std::unordered_map<EdgeKey, int, EdgeKeyHash> point_lookup(const std::vector<CutPoint>& points) {
  std::unordered_map<EdgeKey, int, EdgeKeyHash> lookup;
  lookup.reserve(points.size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) lookup.emplace(points[i].edge, i);
  return lookup;
}

// Rotation of face `t` that puts the vertex alone on its side first, or -1
// when the face is not crossed.
int lone_corner(const Face& t, const std::vector<Side>& sides) {
  const bool s0 = positive(sides[t[0]]), s1 = positive(sides[t[1]]),
             s2 = positive(sides[t[2]]);
  if (s0 == s1 && s1 == s2) return -1;
  if (s1 == s2) return 0;
  if (s0 == s2) return 1;
  return 2;
}

RiggedModel extract_piece(const RiggedModel& model, const std::vector<CutPoint>& points,
                          const std::vector<SidedFace>& faces, Side side,
                          std::vector<int>& origin) {
  const int nv = model.mesh.vertex_count();
  const int total = nv + static_cast<int>(points.size());
  std::vector<int> remap(static_cast<std::size_t>(total), -1);
  for (const SidedFace& f : faces) {
    if (f.side != side) continue;
    for (int v : f.face) remap[v] = 0;
  }
  RiggedModel piece;
  piece.bones = model.bones;
  piece.clips = model.clips;
  piece.global_inverse = model.global_inverse;
  origin.clear();
  for (int v = 0; v < total; ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<int>(origin.size());
    origin.push_back(v);
    if (v < nv) {
      piece.mesh.vertices.push_back(model.mesh.vertices[v]);
      piece.weights.push_back(model.weights[v]);
    } else {
      piece.mesh.vertices.push_back(points[v - nv].position);
      piece.weights.push_back(points[v - nv].influences);
    }
  }
  for (const SidedFace& f : faces) {
    if (f.side != side) continue;
    piece.mesh.faces.push_back({remap[f.face[0]], remap[f.face[1]], remap[f.face[2]]});
  }
  return piece;
}

}  // namespace

Plane Plane::make(const Vec3& normal, double d) {
  if (!normal.allFinite() || !std::isfinite(d) || std::abs(normal.norm() - 1.0) > 1e-9) {
    throw ParameterError("plane normal must be a finite unit vector");
  }
  return Plane{normal, d};
}

Plane Plane::from_normal(const Vec3& normal, double d) {
  const double n = normal.norm();
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(d)) {
    throw ParameterError("plane normal must be finite and non-zero");
  }
  return Plane{normal / n, d / n};
}

cga::Multivector Plane::ipns() const { return cga::make_plane(normal, d); }

double plane_tolerance(const Mesh& mesh) { return 1e-9 * bbox_diagonal(mesh); }

std::vector<Side> classify_vertices(const Mesh& mesh, const Plane& plane, double eps,
                                    bool parallel) {
  return classify(mesh, plane, eps, parallel).side;
}

std::vector<CutPoint> compute_cut_points(const Mesh& mesh,
                                         const std::vector<InfluenceList>& weights,
                                         const Plane& plane, double eps,
                                         const WeightFilter& filter, bool parallel) {
  return cut_points(mesh, weights, plane, eps, classify(mesh, plane, eps, parallel), filter,
                    parallel);
}

std::vector<SidedFace> retriangulate_cut_faces(const Mesh& mesh, const std::vector<Side>& sides,
                                               const std::vector<CutPoint>& points) {
  const auto lookup = point_lookup(points);
  auto point_on = [&](int a, int b) {
    const auto it = lookup.find(EdgeKey(a, b));
    if (it == lookup.end()) {
      throw ParameterError("no cut point on crossed edge (" + std::to_string(a) + ", " +
                           std::to_string(b) + ")");
    }
    return it->second;
  };

  std::vector<SidedFace> out;
  out.reserve(mesh.faces.size() + 2 * points.size());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& t = mesh.faces[f];
    const int k = lone_corner(t, sides);
    if (k < 0) {
      out.push_back({t, positive(sides[t[0]]) ? Side::kPos : Side::kNeg, f});
      continue;
    }
    const int l = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
    const int pi = point_on(l, a), qi = point_on(b, l);
    const int p = points[pi].vertex, q = points[qi].vertex;
    const Side lone = positive(sides[l]) ? Side::kPos : Side::kNeg;
    const Side other = lone == Side::kPos ? Side::kNeg : Side::kPos;
    out.push_back({{l, p, q}, lone, f});
    const double pb = (points[pi].position - mesh.vertices[b]).squaredNorm();
    const double aq = (mesh.vertices[a] - points[qi].position).squaredNorm();
    if (pb <= aq) {
      out.push_back({{p, a, b}, other, f});
      out.push_back({{p, b, q}, other, f});
    } else {
      out.push_back({{p, a, q}, other, f});
      out.push_back({{a, b, q}, other, f});
    }
  }
  return out;
}

std::vector<CutChain> order_cut_polyline(const Mesh& mesh, const std::vector<Side>& sides,
                                         const std::vector<CutPoint>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) return {};
  const EdgeMap edges(mesh);
  for (const CutPoint& cp : points) {
    if (edges.faces_of(cp.edge).size() > 2) {
      throw NonManifoldCut("cut edge (" + std::to_string(cp.edge.lo) + ", " +
                           std::to_string(cp.edge.hi) + ") has " +
                           std::to_string(edges.faces_of(cp.edge).size()) + " faces");
    }
  }
  const auto lookup = point_lookup(points);
  std::vector<int> next(static_cast<std::size_t>(n), -1), prev = next;
  for (const Face& t : mesh.faces) {
    const int k = lone_corner(t, sides);
    if (k < 0) continue;
    const int l = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
    int from = lookup.at(EdgeKey(l, a)), to = lookup.at(EdgeKey(b, l));
    // Keep the negative side on the same hand along every chain.
    if (!positive(sides[l])) std::swap(from, to);
    if (next[from] != -1 || prev[to] != -1) {
      throw NonManifoldCut("cut polyline branches at edge (" +
                           std::to_string(points[from].edge.lo) + ", " +
                           std::to_string(points[from].edge.hi) + ")");
    }
    next[from] = to;
    prev[to] = from;
  }

  std::vector<CutChain> chains;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  auto walk = [&](int start, bool closed) {
    CutChain chain;
    chain.closed = closed;
    for (int i = start; i != -1 && !seen[i]; i = next[i]) {
      seen[i] = 1;
      chain.points.push_back(i);
    }
    chains.push_back(std::move(chain));
  };
  for (int i = 0; i < n; ++i) {
    if (prev[i] == -1) walk(i, false);
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) walk(i, true);
  }
  return chains;
}

CutResult cut(const RiggedModel& model, const Plane& plane, const CutOptions& options) {
  const Mesh& mesh = model.mesh;
  const double eps = plane_tolerance(mesh);
  const Classified c = classify(mesh, plane, eps, options.parallel);

  CutResult result;
  result.points = cut_points(mesh, model.weights, plane, eps, c, options.filter,
                             options.parallel);
  result.chains = order_cut_polyline(mesh, c.side, result.points);
  const std::vector<SidedFace> faces = retriangulate_cut_faces(mesh, c.side, result.points);
  result.cut_faces = static_cast<int>(faces.size() - mesh.faces.size()) / 2;

  bool any_negative = false;
  for (const SidedFace& f : faces) any_negative = any_negative || f.side == Side::kNeg;
  Side first = Side::kNeg, second = Side::kPos;
  if (!any_negative) {
    std::swap(first, second);
    result.swapped = true;
  }
  result.m1 = extract_piece(model, result.points, faces, first, result.m1_origin);
  result.m2 = extract_piece(model, result.points, faces, second, result.m2_origin);
  return result;
}

RiggedModel merge_models(const RiggedModel& a, const RiggedModel& b) {
  RiggedModel out = a;
  const int offset = a.mesh.vertex_count();
  out.mesh.vertices.insert(out.mesh.vertices.end(), b.mesh.vertices.begin(),
                           b.mesh.vertices.end());
  out.weights.insert(out.weights.end(), b.weights.begin(), b.weights.end());
  for (const Face& f : b.mesh.faces) {
    out.mesh.faces.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
  }
  return out;
}

}  // namespace cgaskin
