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

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "cgaskin/cutting.hpp"
#include "cgaskin/errors.hpp"
#include "cgaskin/fixtures.hpp"
#include "test_util.hpp"

namespace cgaskin {
namespace {

// Mid-forearm plane of the cylinders fixture: perpendicular to the forearm,
// 9 units past the elbow.
Plane forearm_plane() {
  const double a = 20.0 * std::numbers::pi / 180.0;
  return Plane::from_normal({std::cos(a), std::sin(a), 0.0}, 24.0 * std::cos(a) + 9.0);
}

// Edges whose endpoints lie strictly on opposite sides, using Euclidean
// distances and counting on-plane vertices as positive.
std::set<EdgeKey> crossed_edges_oracle(const Mesh& mesh, const Plane& plane, double eps) {
  std::set<EdgeKey> out;
  auto side = [&](int v) { return plane.signed_distance(mesh.vertices[v]) < -eps ? -1 : 1; };
  for (const Face& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      if (side(a) != side(b)) out.insert(EdgeKey(a, b));
    }
  }
  return out;
}

Plane random_plane_through(const Mesh& mesh, std::mt19937_64& rng) {
  const Vec3 n = testing::random_unit(rng);
  const Vec3 p = mesh.vertices[std::uniform_int_distribution<int>(0, mesh.vertex_count() - 1)(rng)];
  const Vec3 jitter = testing::random_vec(rng, 0.3);
  return Plane::make(n, n.dot(p + jitter));
}

void check_weights(const RiggedModel& m) {
  for (const InfluenceList& w : m.weights) {
    ASSERT_LE(w.size(), 4u);
    double sum = 0.0;
    for (const Influence& i : w) sum += i.weight;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Cut, PlaneEncodesSignedDistance) {
  const Plane p = Plane::from_normal({0, 3, 4}, 10.0);
  EXPECT_NEAR(p.normal.norm(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.d, 2.0);
  for (const Vec3& x : {Vec3(1, 2, 3), Vec3(-4, 0, 9)}) {
    EXPECT_NEAR(cga::scalar_product(cga::up(x), p.ipns()), p.signed_distance(x), 1e-12);
  }
  EXPECT_THROW(Plane::make({0, 0, 2}, 1.0), ParameterError);
  EXPECT_THROW(Plane::from_normal({0, 0, 0}, 1.0), ParameterError);
}

TEST(Cut, CrossedEdgesMatchBruteForce) {
  const RiggedModel m = make_cylinders_fixture();
  const double eps = plane_tolerance(m.mesh);
  std::mt19937_64 rng(41);
  for (int k = 0; k < 20; ++k) {
    const Plane plane = random_plane_through(m.mesh, rng);
    const auto points = compute_cut_points(m.mesh, m.weights, plane, eps);
    std::set<EdgeKey> got;
    for (const CutPoint& p : points) got.insert(p.edge);
    EXPECT_EQ(got, crossed_edges_oracle(m.mesh, plane, eps));
    for (std::size_t i = 0; i < points.size(); ++i) {
      EXPECT_EQ(points[i].vertex, m.mesh.vertex_count() + static_cast<int>(i));
      if (i > 0) {
        EXPECT_LT(points[i - 1].edge, points[i].edge);
      }
    }
  }
}

TEST(Cut, RandomPlanesPreserveAreaAndValidity) {
  const RiggedModel m = make_cylinders_fixture();
  const double area = surface_area(m.mesh), diag = bbox_diagonal(m.mesh);
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const Plane plane = random_plane_through(m.mesh, rng);
    const CutResult r = cut(m, plane);
    EXPECT_NO_THROW(validate_model(r.m1));
    EXPECT_NO_THROW(validate_model(r.m2));
    EXPECT_NEAR(surface_area(r.m1.mesh) + surface_area(r.m2.mesh), area, 1e-9 * area);
    for (const CutPoint& p : r.points) {
      EXPECT_LE(std::abs(plane.signed_distance(p.position)), 1e-9 * diag);
    }
    EXPECT_EQ(r.m1.mesh.vertex_count() + r.m2.mesh.vertex_count(),
              m.mesh.vertex_count() + 2 * static_cast<int>(r.points.size()));
    EXPECT_EQ(r.m1.mesh.face_count() + r.m2.mesh.face_count(),
              m.mesh.face_count() + 2 * r.cut_faces);
    check_weights(r.m1);
    check_weights(r.m2);
    for (const Vec3& v : r.m1.mesh.vertices) EXPECT_LE(plane.signed_distance(v), 1e-9 * diag);
    for (const Vec3& v : r.m2.mesh.vertices) EXPECT_GE(plane.signed_distance(v), -1e-9 * diag);
  }
}

TEST(Cut, SerialMatchesParallel) {
  const RiggedModel m = make_arm_fixture();
  const Plane plane = Plane::from_normal({1, 0.2, 0.1}, 20.0);
  const CutResult a = cut(m, plane, {{}, true});
  const CutResult b = cut(m, plane, {{}, false});
  EXPECT_EQ(a.m1.mesh.vertices, b.m1.mesh.vertices);
  EXPECT_EQ(a.m1.mesh.faces, b.m1.mesh.faces);
  EXPECT_EQ(a.m2.mesh.vertices, b.m2.mesh.vertices);
  EXPECT_EQ(a.m2.weights, b.m2.weights);
}

TEST(Cut, SeamlessRingGivesOneClosedChain) {
  const RiggedModel m = make_fixture("cylinders_seamless");
  const CutResult r = cut(m, Plane::make({1, 0, 0}, 10.1));
  ASSERT_EQ(r.chains.size(), 1u);
  EXPECT_TRUE(r.chains[0].closed);
  EXPECT_EQ(r.points.size(), 16u);
  EXPECT_EQ(summarize_topology(r.m1.mesh).boundary_loops, 2);
  EXPECT_EQ(summarize_topology(r.m2.mesh).boundary_loops, 1);
}

TEST(Cut, ChainNeighboursShareAFace) {
  const RiggedModel m = make_cylinders_fixture();
  const CutResult r = cut(m, forearm_plane());
  int total = 0;
  for (const CutChain& chain : r.chains) {
    total += static_cast<int>(chain.points.size());
    for (std::size_t i = 1; i < chain.points.size(); ++i) {
      const EdgeKey a = r.points[chain.points[i - 1]].edge, b = r.points[chain.points[i]].edge;
      bool shared = false;
      for (const Face& f : m.mesh.faces) {
        auto has = [&](const EdgeKey& e) {
          int n = 0;
          for (int v : f) n += (v == e.lo || v == e.hi);
          return n == 2;
        };
        shared = shared || (has(a) && has(b));
      }
      EXPECT_TRUE(shared);
    }
  }
  EXPECT_EQ(total, static_cast<int>(r.points.size()));
}

TEST(Cut, PlaneThroughVertices) {
  const RiggedModel m = make_fixture("cylinders_seamless");
  const double ring_x = 48.0 * 10.0 / 47.0;
  const CutResult r = cut(m, Plane::make({1, 0, 0}, ring_x));
  EXPECT_NO_THROW(validate_model(r.m1));
  EXPECT_NO_THROW(validate_model(r.m2));
  const double diag = bbox_diagonal(m.mesh);
  for (const CutPoint& p : r.points) {
    EXPECT_LE(std::abs(p.position.x() - ring_x), 1e-9 * diag);
  }
  EXPECT_NEAR(surface_area(r.m1.mesh) + surface_area(r.m2.mesh), surface_area(m.mesh),
              1e-9 * surface_area(m.mesh));
}

TEST(Cut, MissingPlaneKeepsEverything) {
  const RiggedModel m = make_cylinders_fixture();
  const CutResult below = cut(m, Plane::make({1, 0, 0}, 1000.0));
  EXPECT_EQ(below.m1.mesh.vertices, m.mesh.vertices);
  EXPECT_EQ(below.m2.mesh.face_count(), 0);
  EXPECT_FALSE(below.swapped);
  const CutResult above = cut(m, Plane::make({1, 0, 0}, -1000.0));
  EXPECT_TRUE(above.swapped);
  EXPECT_EQ(above.m1.mesh.face_count(), m.mesh.face_count());
}

TEST(Cut, MergeIsDisjointUnion) {
  const RiggedModel m = make_cylinders_fixture();
  const CutResult r = cut(m, forearm_plane());
  const RiggedModel both = merge_models(r.m1, r.m2);
  EXPECT_NO_THROW(validate_model(both));
  EXPECT_EQ(both.mesh.vertex_count(), r.m1.mesh.vertex_count() + r.m2.mesh.vertex_count());
  EXPECT_EQ(summarize_topology(both.mesh).components,
            summarize_topology(r.m1.mesh).components + summarize_topology(r.m2.mesh).components);
}

// Frozen from this implementation; a change here is a behaviour change.
TEST(CutGolden, ForearmPlaneOnCylinders) {
  const RiggedModel m = make_cylinders_fixture();
  const CutResult r = cut(m, forearm_plane());
  EXPECT_EQ(r.points.size(), 21u);
  EXPECT_EQ(r.chains.size(), 5u);
  EXPECT_EQ(r.cut_faces, 16);
  EXPECT_EQ(r.m1.mesh.vertex_count(), 465);
  EXPECT_EQ(r.m1.mesh.face_count(), 536);
  EXPECT_EQ(r.m2.mesh.vertex_count(), 211);
  EXPECT_EQ(r.m2.mesh.face_count(), 254);
}

}  // namespace
}  // namespace cgaskin
