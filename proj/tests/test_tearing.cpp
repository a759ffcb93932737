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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cgaskin/errors.hpp"
#include "cgaskin/fixtures.hpp"
#include "cgaskin/skinning.hpp"
#include "cgaskin/tearing.hpp"
#include "test_util.hpp"

namespace cgaskin {
namespace {

// Blade in the plane x = const, pointing at the tube axis from angle theta.
ScalpelState radial(double x, double theta, double radius, double time) {
  const Vec3 dir(0.0, std::cos(theta), std::sin(theta));
  return {time, Vec3(x, 0, 0) + 1.6 * radius * dir, Vec3(x, 0, 0) + 0.4 * radius * dir};
}

std::vector<ScalpelState> cylinders_scalpel() {
  const double theta = 2 * std::numbers::pi * 3.5 / 8;
  return {radial(5.3617, theta, 3.0, 0.0), radial(13.021, theta, 3.0, 1.0)};
}

std::vector<ScalpelState> arm_scalpel() {
  const double theta = 2 * std::numbers::pi * 7.5 / 23;
  return {radial(5.642, theta, 3.5, 0.0), radial(14.45, theta, 3.5, 1.0)};
}

void check_weights(const RiggedModel& m) {
  for (const InfluenceList& w : m.weights) {
    ASSERT_LE(w.size(), 4u);
    double sum = 0.0;
    for (const Influence& i : w) sum += i.weight;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

struct Case {
  const char* fixture;
  std::vector<ScalpelState> (*scalpel)();
  int points;
};

class TearCounts : public ::testing::TestWithParam<Case> {};

TEST_P(TearCounts, MatchReferenceCounts) {
  const Case c = GetParam();
  const RiggedModel m = make_fixture(c.fixture);
  const TearResult r = tear(m, c.scalpel());
  EXPECT_EQ(r.intersection_points, c.points);
  EXPECT_EQ(r.duplicated_vertices, c.points - 2);
  ASSERT_EQ(r.steps.size(), 1u);
  const int crossings = static_cast<int>(r.steps[0].intermediates.size());
  EXPECT_EQ(r.duplicated_vertices, crossings);
  EXPECT_EQ(static_cast<int>(r.torn.duplicates.size()), crossings);
  // Two anchors plus two copies of every crossing.
  EXPECT_EQ(r.torn.model.mesh.vertex_count(), m.mesh.vertex_count() + 2 + 2 * crossings);
  const TopologySummary before = summarize_topology(m.mesh);
  const TopologySummary after = summarize_topology(r.torn.model.mesh);
  EXPECT_EQ(after.boundary_edges, before.boundary_edges + 2 * crossings + 2);
  EXPECT_EQ(after.components, 1);
  EXPECT_NEAR(surface_area(r.torn.model.mesh), surface_area(m.mesh), 1e-9 * surface_area(m.mesh));
  EXPECT_LT(r.max_projection_distance, 1e-9);
  check_weights(r.torn.model);
  for (const DuplicatePair& d : r.torn.duplicates) {
    EXPECT_EQ(r.torn.model.mesh.vertices[d.pos], r.torn.model.mesh.vertices[d.neg]);
    EXPECT_EQ(r.torn.model.weights[d.pos], r.torn.model.weights[d.neg]);
    EXPECT_LE(std::abs(r.steps[0].plane.signed_distance(r.torn.model.mesh.vertices[d.pos])),
              1e-9 * bbox_diagonal(m.mesh));
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, TearCounts,
                         ::testing::Values(Case{"cylinders", cylinders_scalpel, 17},
                                           Case{"arm", arm_scalpel, 34}));

TEST(Tear, AcceleratedMatchesLinear) {
  const RiggedModel m = make_arm_fixture();
  const TearResult a = tear(m, arm_scalpel(), {false, true, {}});
  const TearResult b = tear(m, arm_scalpel(), {true, true, {}});
  EXPECT_EQ(a.torn.model.mesh.vertices, b.torn.model.mesh.vertices);
  EXPECT_EQ(a.torn.model.mesh.faces, b.torn.model.mesh.faces);
}

TEST(Tear, OpeningMovesPairsApart) {
  const RiggedModel m = make_cylinders_fixture();
  const TearResult r = tear(m, cylinders_scalpel());
  const RiggedModel same = open_tear(r.torn.model, r.torn.duplicates, 0.0);
  EXPECT_EQ(same.mesh.vertices, r.torn.model.mesh.vertices);
  const double delta = default_tear_opening(m.mesh);
  const RiggedModel open = open_tear(r.torn.model, r.torn.duplicates, delta);
  for (const DuplicatePair& d : r.torn.duplicates) {
    EXPECT_NEAR((open.mesh.vertices[d.pos] - open.mesh.vertices[d.neg]).norm(), 2 * delta, 1e-12);
  }
  EXPECT_NO_THROW(validate_model(open));
  EXPECT_THROW(open_tear(r.torn.model, r.torn.duplicates, -1.0), ParameterError);
}

TEST(Tear, ReversedScalpelGivesMirrorPath) {
  // Coplanar blades: both directions use the same plane and cross the same
  // edges.
  for (auto scalpel : {cylinders_scalpel, arm_scalpel}) {
    const RiggedModel m = make_fixture(scalpel == cylinders_scalpel ? "cylinders" : "arm");
    std::vector<ScalpelState> forward = scalpel(), backward = scalpel();
    std::reverse(backward.begin(), backward.end());
    std::swap(backward[0].time, backward[1].time);
    const TearResult f = tear(m, forward), b = tear(m, backward);
    EXPECT_EQ(f.intersection_points, b.intersection_points);
    auto positions = [](const TearPath& p) {
      std::vector<std::array<double, 3>> out;
      for (const TearCrossing& c : p.intermediates) {
        out.push_back({c.position.x(), c.position.y(), c.position.z()});
      }
      return out;
    };
    auto fp = positions(f.steps[0]), bp = positions(b.steps[0]);
    std::reverse(bp.begin(), bp.end());
    ASSERT_EQ(fp.size(), bp.size());
    for (std::size_t i = 0; i < fp.size(); ++i) {
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(fp[i][k], bp[i][k], 1e-9);
    }
  }
}

TEST(Tear, ChainedStepsSplitThePinchedAnchor) {
  const RiggedModel m = make_arm_fixture();
  const double theta = 2 * std::numbers::pi * 7.5 / 23;
  const std::vector<ScalpelState> states = {radial(5.642, theta, 3.5, 0.0),
                                            radial(10.1, theta + 0.05, 3.5, 1.0),
                                            radial(14.45, theta, 3.5, 2.0)};
  const TearResult r = tear(m, states);
  ASSERT_EQ(r.steps.size(), 2u);
  int crossings = 0;
  for (const TearPath& p : r.steps) crossings += static_cast<int>(p.intermediates.size());
  EXPECT_EQ(r.intersection_points, 3 + crossings);
  EXPECT_EQ(r.duplicated_vertices, crossings);
  EXPECT_EQ(static_cast<int>(r.torn.duplicates.size()), crossings + 1);
  EXPECT_NO_THROW(validate_model(r.torn.model));
  EXPECT_EQ(summarize_topology(r.torn.model.mesh).components, 1);
  const RiggedModel open = open_tear(r.torn.model, r.torn.duplicates, 0.3);
  EXPECT_NO_THROW(validate_model(open));
}

TEST(ScalpelHit, ErrorsAndAnchors) {
  const RiggedModel m = make_cylinders_fixture();
  EXPECT_THROW(scalpel_hit(m.mesh, {0, Vec3(5, 10, 10), Vec3(5, 9, 9)}), NoIntersection);
  try {
    scalpel_hit(m.mesh, {0, Vec3(5, 0, 10), Vec3(5, 0, -10)});
    FAIL() << "expected AmbiguousIntersection";
  } catch (const AmbiguousIntersection& e) {
    EXPECT_EQ(e.count(), 2);
  }
  EXPECT_THROW(scalpel_hit(m.mesh, {0, Vec3(5, 0, 10), Vec3(5, 0, 10)}), ParameterError);
  const TearAnchor a = scalpel_hit(m.mesh, cylinders_scalpel()[0]);
  EXPECT_GE(a.bary.face, 0);
  for (double w : a.bary.w) EXPECT_GE(w, 1e-9 / (1 + 3e-9));
  EXPECT_NEAR(a.bary.w[0] + a.bary.w[1] + a.bary.w[2], 1.0, 1e-15);
}

TEST(ScalpelHit, BvhMatchesLinearScanBitForBit) {
  const RiggedModel m = make_arm_fixture();
  const Bvh bvh(m.mesh);
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> x(-2, 62), yz(-8, 8);
  for (int k = 0; k < 500; ++k) {
    const Vec3 a(x(rng), yz(rng), yz(rng)), b(x(rng), yz(rng), yz(rng));
    const auto linear = scan_segment_hits(m.mesh, a, b, true);
    const auto fast = bvh.segment_hits(a, b);
    ASSERT_EQ(linear.size(), fast.size());
    for (std::size_t i = 0; i < linear.size(); ++i) {
      EXPECT_EQ(linear[i].face, fast[i].face);
      EXPECT_EQ(linear[i].t, fast[i].t);
      EXPECT_EQ(linear[i].u, fast[i].u);
    }
  }
  for (const ScalpelState& s : arm_scalpel()) {
    const TearAnchor p = scalpel_hit(m.mesh, s), q = scalpel_hit(m.mesh, s, &bvh);
    EXPECT_EQ(p.point, q.point);
    EXPECT_EQ(p.bary.face, q.bary.face);
  }
}

TEST(TearPlane, DegenerateStep) {
  const ScalpelState s{1.0, Vec3(0, 0, 2), Vec3(0, 0, 1)};
  EXPECT_THROW(build_tear_plane(Vec3(0, 0, 0), s), DegenerateTearStep);
  const Plane p = build_tear_plane(Vec3(1, 0, 0), s);
  EXPECT_NEAR(std::abs(p.normal.y()), 1.0, 1e-15);
  EXPECT_NEAR(p.signed_distance(Vec3(1, 0, 0)), 0.0, 1e-15);
}

TEST(Tear, TornModelReDeforms) {
  const TearResult r = tear(make_arm_fixture(), arm_scalpel());
  RiggedModel torn = open_tear(r.torn.model, r.torn.duplicates, 0.5);
  const Trs bend = Trs::from_axis_angle({0, 1, 0}, -1.0);
  const Trs grow{Vec3::Zero(), Quat::Identity(), 1.5};
  generate_keyframe(torn, "bend_grow", 1, relative_to_bind(torn, 1, bend), 1.0);
  generate_keyframe(torn, "bend_grow", 1, relative_to_bind(torn, 1, grow), 2.0);
  for (double t : {1.0, 1.5, 2.0}) {
    for (Backend b : {Backend::kCga, Backend::kLbs, Backend::kDq}) {
      const SkinnedFrame f = skin(torn, global_pose_at(torn, "bend_grow", t), b);
      for (const Vec3& p : f.positions) ASSERT_TRUE(p.allFinite());
    }
  }
}

TEST(Tear, NeedsTwoStates) {
  EXPECT_THROW(tear(make_cylinders_fixture(), {cylinders_scalpel()[0]}), ParameterError);
}

}  // namespace
}  // namespace cgaskin
