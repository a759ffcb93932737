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

#include "cgaskin/tearing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

// Side of a vertex with respect to the tear plane; vertices within eps of
// the plane count as positive (they are treated as nudged 2 eps along the
// normal).
struct PlaneSides {
  const Mesh& mesh;
  const Plane& plane;
  double eps;

  double distance(int v) const { return plane.signed_distance(mesh.vertices[v]); }
  bool positive(int v) const { return distance(v) > -eps; }
  double perturbed(int v) const {
    const double d = distance(v);
    return std::abs(d) < eps ? d + 2.0 * eps : d;
  }
  bool crossed(int a, int b) const { return positive(a) != positive(b); }

  TearCrossing crossing(const EdgeKey& e) const {
    const double d_lo = perturbed(e.lo), d_hi = perturbed(e.hi);
    auto moved = [&](int v) {
      return std::abs(distance(v)) < eps ? Vec3(mesh.vertices[v] + 2.0 * eps * plane.normal)
                                         : mesh.vertices[v];
    };
    TearCrossing c;
    c.edge = e;
    c.lambda = d_lo / (d_lo - d_hi);
    c.position = (1.0 - c.lambda) * moved(e.lo) + c.lambda * moved(e.hi);
    return c;
  }
};

std::array<EdgeKey, 3> face_edges(const Face& t) {
  return {EdgeKey(t[0], t[1]), EdgeKey(t[1], t[2]), EdgeKey(t[2], t[0])};
}

// Rotation of `t` starting at corner `k`.
Face rotated(const Face& t, int k) { return {t[k], t[(k + 1) % 3], t[(k + 2) % 3]}; }

int corner_of(const Face& t, int v) {
  for (int k = 0; k < 3; ++k) {
    if (t[k] == v) return k;
  }
  return -1;
}

// Corner k such that the directed edge (t[k], t[k+1]) is `e`.
int edge_corner(const Face& t, const EdgeKey& e) {
  for (int k = 0; k < 3; ++k) {
    if (EdgeKey(t[k], t[(k + 1) % 3]) == e) return k;
  }
  throw ParameterError("edge is not on the face");
}

Vec3 face_normal(const Mesh& m, const Face& t) {
  return (m.vertices[t[1]] - m.vertices[t[0]]).cross(m.vertices[t[2]] - m.vertices[t[0]]);
}

std::vector<std::vector<int>> vertex_faces(const Mesh& mesh) {
  std::vector<std::vector<int>> out(mesh.vertices.size());
  for (int f = 0; f < mesh.face_count(); ++f) {
    for (int v : mesh.faces[f]) out[v].push_back(f);
  }
  return out;
}

// Groups the faces around `v` into fans connected through edges at `v`.
std::vector<std::vector<int>> fans_at(const Mesh& mesh, int v, const std::vector<int>& faces) {
  const int n = static_cast<int>(faces.size());
  std::vector<int> group(static_cast<std::size_t>(n));
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  std::unordered_map<int, int> by_neighbour;
  for (int i = 0; i < n; ++i) {
    for (int u : mesh.faces[faces[i]]) {
      if (u == v) continue;
      const auto [it, inserted] = by_neighbour.try_emplace(u, i);
      if (!inserted) group[find(i)] = find(it->second);
    }
  }
  std::vector<std::vector<int>> fans;
  std::unordered_map<int, int> index;
  for (int i = 0; i < n; ++i) {
    const auto [it, inserted] = index.try_emplace(find(i), static_cast<int>(fans.size()));
    if (inserted) fans.emplace_back();
    fans[it->second].push_back(faces[i]);
  }
  return fans;
}

}  // namespace

double default_tear_opening(const Mesh& mesh) { return 0.01 * bbox_diagonal(mesh); }

TearAnchor scalpel_hit(const Mesh& mesh, const ScalpelState& scalpel, const Bvh* bvh,
                       bool parallel) {
  const double diag = bbox_diagonal(mesh);
  const double length = (scalpel.tip - scalpel.tail).norm();
  if (!scalpel.tip.allFinite() || !scalpel.tail.allFinite() || !(length > 1e-9 * diag)) {
    throw ParameterError("scalpel endpoints must be finite and distinct");
  }
  const std::vector<SegmentHit> hits =
      bvh ? bvh->segment_hits(scalpel.tip, scalpel.tail)
          : scan_segment_hits(mesh, scalpel.tip, scalpel.tail, parallel);

  // Hits at the same place along the blade (shared edges / vertices) are
  // one crossing; keep the lowest face id of each group.
  const double same = 1e-9 * diag / length;
  std::vector<SegmentHit> crossings;
  for (std::size_t i = 0; i < hits.size();) {
    SegmentHit best = hits[i];
    std::size_t j = i + 1;
    for (; j < hits.size() && hits[j].t - hits[i].t <= same; ++j) {
      if (hits[j].face < best.face) best = hits[j];
    }
    crossings.push_back(best);
    i = j;
  }
  if (crossings.empty()) {
    throw NoIntersection("scalpel at t=" + std::to_string(scalpel.time) +
                         " does not cross the surface");
  }
  if (crossings.size() > 1) {
    throw AmbiguousIntersection(static_cast<int>(crossings.size()),
                                "scalpel at t=" + std::to_string(scalpel.time) + " crosses the "
                                "surface " + std::to_string(crossings.size()) + " times");
  }

  const SegmentHit& h = crossings.front();
  std::array<double, 3> w = {1.0 - h.u - h.v, h.u, h.v};
  double sum = 0.0;
  for (double& x : w) {
    x = std::max(x, 1e-9);
    sum += x;
  }
  for (double& x : w) x /= sum;
  const Face& t = mesh.faces[h.face];
  TearAnchor a;
  a.bary = {h.face, w};
  a.point = w[0] * mesh.vertices[t[0]] + w[1] * mesh.vertices[t[1]] + w[2] * mesh.vertices[t[2]];
  return a;
}

Plane build_tear_plane(const Vec3& anchor, const ScalpelState& next, double tolerance) {
  const Vec3 u = next.tip - anchor, v = next.tail - anchor;
  const Vec3 n = u.cross(v);
  const double norm = n.norm();
  if (!(norm > std::max(tolerance, 1e-12 * u.norm() * v.norm()))) {
    throw DegenerateTearStep("scalpel at t=" + std::to_string(next.time) +
                             " is collinear with the previous anchor");
  }
  return Plane::from_normal(n, n.dot(anchor));
}

TearPath trace_surface_path(const Mesh& mesh, const Plane& plane, const TearAnchor& from,
                            const TearAnchor& to) {
  if (to.vertex >= 0 || to.bary.face < 0 || to.bary.face >= mesh.face_count()) {
    throw ParameterError("tear target must lie inside a face");
  }
  const PlaneSides sides{mesh, plane, plane_tolerance(mesh)};
  TearPath path;
  path.from = from;
  path.to = to;
  path.plane = plane;
  const double off = plane.signed_distance(to.point);
  path.projection_distance = std::abs(off);
  path.to.point = to.point - off * plane.normal;
  const int target = to.bary.face;

  struct Candidate {
    int face;
    EdgeKey edge;
    double distance;
  };
  std::vector<Candidate> candidates;
  auto add_candidate = [&](int f, const EdgeKey& e) {
    const double d = (sides.crossing(e).position - path.to.point).norm();
    candidates.push_back({f, e, d});
  };

  if (from.vertex < 0) {
    const int f0 = from.bary.face;
    if (f0 < 0 || f0 >= mesh.face_count()) throw ParameterError("tear start has no face");
    if (f0 == target) {
      path.faces = {f0};
      return path;
    }
    for (const EdgeKey& e : face_edges(mesh.faces[f0])) {
      if (sides.crossed(e.lo, e.hi)) add_candidate(f0, e);
    }
  } else {
    const int v = from.vertex;
    for (int f = 0; f < mesh.face_count(); ++f) {
      const int k = corner_of(mesh.faces[f], v);
      if (k < 0) continue;
      if (f == target) {
        path.faces = {f};
        return path;
      }
      const Face t = rotated(mesh.faces[f], k);
      if (sides.crossed(t[1], t[2])) add_candidate(f, EdgeKey(t[1], t[2]));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });

  const EdgeMap edges(mesh);
  const int budget = mesh.face_count();
  for (const Candidate& start : candidates) {
    std::unordered_set<int> visited = {start.face};
    std::vector<int> faces = {start.face};
    std::vector<TearCrossing> crossings;
    int face = start.face;
    EdgeKey exit = start.edge;
    bool found = false;
    while (static_cast<int>(faces.size()) <= budget) {
      crossings.push_back(sides.crossing(exit));
      const int next = edges.opposite_face(exit, face);
      if (next < 0 || visited.contains(next)) break;
      visited.insert(next);
      faces.push_back(next);
      if (next == target) {
        found = true;
        break;
      }
      bool advanced = false;
      for (const EdgeKey& e : face_edges(mesh.faces[next])) {
        if (e != exit && sides.crossed(e.lo, e.hi)) {
          exit = e;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
      face = next;
    }
    if (found) {
      path.faces = std::move(faces);
      path.intermediates = std::move(crossings);
      return path;
    }
  }
  throw PathNotFound("tear plane does not connect the anchors across the surface (" +
                     std::to_string(candidates.size()) + " directions tried)");
}

TornModel apply_tear(const RiggedModel& model, const TearPath& path, const WeightFilter& filter) {
  const Mesh& mesh = model.mesh;
  const PlaneSides sides{mesh, path.plane, plane_tolerance(mesh)};
  const int m = static_cast<int>(path.intermediates.size());
  if (static_cast<int>(path.faces.size()) != m + 1) {
    throw ParameterError("tear path needs one more face than crossings");
  }

  TornModel out;
  out.model = model;
  Mesh& torn = out.model.mesh;
  auto add_vertex = [&](const Vec3& p, InfluenceList w) {
    torn.vertices.push_back(p);
    out.model.weights.push_back(std::move(w));
    return torn.vertex_count() - 1;
  };
  auto face_weights = [&](const BaryCoord& b) {
    const Face& t = mesh.faces.at(b.face);
    return weight_by_barycentric(model.weights[t[0]], model.weights[t[1]], model.weights[t[2]],
                                 b.w, filter);
  };

  const bool from_vertex = path.from.vertex >= 0;
  const int s_from = from_vertex ? path.from.vertex
                                 : add_vertex(path.from.point, face_weights(path.from.bary));
  std::vector<int> qpos(static_cast<std::size_t>(m)), qneg(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const TearCrossing& q = path.intermediates[j];
    const InfluenceList w = weight_by_edge(model.weights[q.edge.lo], model.weights[q.edge.hi],
                                           q.lambda, filter);
    qpos[j] = add_vertex(q.position, w);
    qneg[j] = add_vertex(q.position, w);
    out.duplicates.push_back({qpos[j], qneg[j], path.plane.normal});
  }
  const int s_to = add_vertex(path.to.point, face_weights(path.to.bary));
  out.anchors = {s_from, s_to};

  // Copy of crossing j on the side of original vertex v.
  auto copy = [&](int j, int v) { return sides.positive(v) ? qpos[j] : qneg[j]; };

  std::unordered_map<int, std::vector<Face>> replaced;
  auto anchor_in_face = [&](int face, int s, int j) {
    // Anchor s inside `face`; crossing j on one of its edges.
    const Face t = rotated(mesh.faces[face], edge_corner(mesh.faces[face],
                                                         path.intermediates[j].edge));
    const int a = t[0], b = t[1], c = t[2];
    replaced[face] = {{s, a, copy(j, a)}, {s, copy(j, b), b}, {s, b, c}, {s, c, a}};
  };

  if (m == 0) {
    const int face = path.faces.front();
    const Face& t0 = mesh.faces[face];
    if (from_vertex) {
      const Face t = rotated(t0, corner_of(t0, s_from));
      replaced[face] = {{t[0], t[1], s_to}, {t[1], t[2], s_to}, {t[2], t[0], s_to}};
    } else {
      int k = -1;
      for (int i = 0; i < 3; ++i) {
        if (sides.crossed(t0[i], t0[(i + 1) % 3]) && sides.crossed(t0[i], t0[(i + 2) % 3])) k = i;
      }
      if (k < 0) throw DegenerateTearStep("tear chord does not separate the face corners");
      const Face t = rotated(t0, k);
      const int l = t[0], a = t[1], b = t[2];
      const Vec3 p = sides.crossing(EdgeKey(l, a)).position;
      int near = s_from, far = s_to;
      if ((torn.vertices[s_to] - p).norm() < (torn.vertices[s_from] - p).norm()) {
        std::swap(near, far);
      }
      std::vector<Face> tris = {{l, a, near}, {b, l, far}, {l, near, far}};
      const Vec3 n = face_normal(mesh, t0);
      const Face d1 = {a, b, far}, d2 = {a, far, near};
      if (face_normal(torn, d1).dot(n) > 0.0 && face_normal(torn, d2).dot(n) > 0.0) {
        tris.push_back(d1);
        tris.push_back(d2);
      } else {
        tris.push_back({a, b, near});
        tris.push_back({b, far, near});
      }
      replaced[face] = std::move(tris);
    }
  } else {
    const int first = path.faces.front();
    if (from_vertex) {
      const Face t = rotated(mesh.faces[first], corner_of(mesh.faces[first], s_from));
      replaced[first] = {{t[0], t[1], copy(0, t[1])}, {t[0], copy(0, t[2]), t[2]}};
    } else {
      anchor_in_face(first, s_from, 0);
    }
    for (int j = 1; j < m; ++j) {
      const int face = path.faces[j];
      const EdgeKey in = path.intermediates[j - 1].edge, exit = path.intermediates[j].edge;
      const int l = (in.lo == exit.lo || in.lo == exit.hi) ? in.lo : in.hi;
      const Face t = rotated(mesh.faces[face], corner_of(mesh.faces[face], l));
      const int a = t[1], b = t[2];
      const bool entry_is_p = in == EdgeKey(l, a);
      const int jp = entry_is_p ? j - 1 : j, jr = entry_is_p ? j : j - 1;
      const int pl = copy(jp, l), rl = copy(jr, l);
      const int po = copy(jp, a), ro = copy(jr, b);
      std::vector<Face> tris = {{l, pl, rl}};
      if (entry_is_p) {
        tris.push_back({po, a, b});
        tris.push_back({po, b, ro});
      } else {
        tris.push_back({ro, po, a});
        tris.push_back({ro, a, b});
      }
      replaced[face] = std::move(tris);
    }
    anchor_in_face(path.faces.back(), s_to, m - 1);
  }

  std::vector<Face> faces;
  faces.reserve(mesh.faces.size() + 4 * path.faces.size());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto it = replaced.find(f);
    if (it == replaced.end()) {
      faces.push_back(mesh.faces[f]);
    } else {
      faces.insert(faces.end(), it->second.begin(), it->second.end());
    }
  }
  torn.faces = std::move(faces);

  // A tear continuing from an existing vertex can pinch it between two
  // openings; give each fan its own copy.
  if (from_vertex && m > 0) {
    const auto incident = vertex_faces(torn);
    const auto fans = fans_at(torn, s_from, incident[s_from]);
    if (fans.size() == 2) {
      auto side_of = [&](const std::vector<int>& fan) {
        Vec3 centre = Vec3::Zero();
        int count = 0;
        for (int f : fan) {
          for (int u : torn.faces[f]) {
            if (u == s_from) continue;
            centre += torn.vertices[u];
            ++count;
          }
        }
        return path.plane.signed_distance(centre / count);
      };
      const int neg_fan = side_of(fans[0]) < side_of(fans[1]) ? 0 : 1;
      const int split =
          add_vertex(torn.vertices[s_from], out.model.weights[s_from]);
      for (int f : fans[neg_fan]) {
        for (int& u : torn.faces[f]) {
          if (u == s_from) u = split;
        }
      }
      out.duplicates.push_back({s_from, split, path.plane.normal});
    }
  }
  return out;
}

RiggedModel open_tear(const RiggedModel& torn, const std::vector<DuplicatePair>& duplicates,
                      double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError("tear opening must be a finite non-negative distance");
  }
  RiggedModel out = torn;
  if (delta == 0.0) return out;
  for (const DuplicatePair& d : duplicates) {
    out.mesh.vertices.at(d.pos) += delta * d.normal;
    out.mesh.vertices.at(d.neg) -= delta * d.normal;
  }
  return out;
}

TearResult tear(const RiggedModel& model, const std::vector<ScalpelState>& scalpel,
                const TearOptions& options) {
  if (scalpel.size() < 2) throw ParameterError("a tear needs at least two scalpel states");
  TearResult result;
  result.torn.model = model;
  RiggedModel& current = result.torn.model;

  auto hit = [&](const ScalpelState& s) {
    if (options.accelerate) {
      const Bvh bvh(current.mesh);
      return scalpel_hit(current.mesh, s, &bvh, options.parallel);
    }
    return scalpel_hit(current.mesh, s, nullptr, options.parallel);
  };

  TearAnchor anchor = hit(scalpel.front());
  result.intersection_points = 1;
  for (std::size_t i = 0; i + 1 < scalpel.size(); ++i) {
    const Plane plane = build_tear_plane(anchor.point, scalpel[i + 1]);
    const TearAnchor target = hit(scalpel[i + 1]);
    const TearPath path = trace_surface_path(current.mesh, plane, anchor, target);
    TornModel step = apply_tear(current, path, options.filter);

    const std::size_t crossings = path.intermediates.size();
    if (step.duplicates.size() > crossings) {
      // Pinched anchor: open it along the mean of the two plane normals.
      const Vec3 prev = result.steps.back().plane.normal;
      const Vec3 aligned = prev.dot(plane.normal) < 0.0 ? Vec3(-prev) : prev;
      const Vec3 mean = aligned + plane.normal;
      if (mean.norm() > 1e-12) step.duplicates.back().normal = mean.normalized();
    }
    result.torn.duplicates.insert(result.torn.duplicates.end(), step.duplicates.begin(),
                                  step.duplicates.end());
    if (result.torn.anchors.empty()) result.torn.anchors.push_back(step.anchors.front());
    result.torn.anchors.push_back(step.anchors.back());
    result.duplicated_vertices += static_cast<int>(crossings);
    result.intersection_points += 1 + static_cast<int>(crossings);
    result.max_projection_distance =
        std::max(result.max_projection_distance, path.projection_distance);
    current = std::move(step.model);
    result.steps.push_back(path);

    anchor = TearAnchor{};
    anchor.point = current.mesh.vertices[result.torn.anchors.back()];
    anchor.vertex = result.torn.anchors.back();
  }
  validate_model(current);
  return result;
}

}  // namespace cgaskin
