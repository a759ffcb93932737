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

// OpenMP kernels against their serial counterparts on the arm fixture.

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "cgaskin/animation.hpp"
#include "cgaskin/bvh.hpp"
#include "cgaskin/cutting.hpp"
#include "cgaskin/fixtures.hpp"
#include "cgaskin/skinning.hpp"
#include "cgaskin/tearing.hpp"

namespace {

using namespace cgaskin;

struct Scene {
  RiggedModel model = make_arm_fixture();
  Pose pose;
  Plane plane;
  std::vector<ScalpelState> scalpel;

  Scene() {
    generate_keyframe(model, "bench", 1,
                      relative_to_bind(model, 1, Trs::from_axis_angle({0, 1, 1}, 0.7)), 1.0);
    generate_keyframe(model, "bench", 2,
                      relative_to_bind(model, 2, {Vec3::Zero(), Quat::Identity(), 0.5}), 1.0);
    pose = global_pose_at(model, "bench", 1.0);
    const double a = 25.0 * std::numbers::pi / 180.0;
    plane = Plane::from_normal({std::cos(a), std::sin(a), 0.0}, 30.0 * std::cos(a) + 11.0);
    const double theta = 2 * std::numbers::pi * 7.5 / 23, r = 3.5;
    const Vec3 dir(0.0, std::cos(theta), std::sin(theta));
    for (auto [x, t] : {std::pair{5.642, 0.0}, std::pair{14.45, 1.0}}) {
      scalpel.push_back({t, Vec3(x, 0, 0) + 1.6 * r * dir, Vec3(x, 0, 0) + 0.4 * r * dir});
    }
  }
};

const Scene& scene() {
  static const Scene s;
  return s;
}

void BM_Skin(benchmark::State& state, Backend backend, bool parallel) {
  const Scene& s = scene();
  for (auto _ : state) {
    benchmark::DoNotOptimize(skin(s.model, s.pose, backend, {true, parallel}));
  }
  state.SetItemsProcessed(state.iterations() * s.model.mesh.vertex_count());
}

void BM_SkinReference(benchmark::State& state, Backend backend) {
  const Scene& s = scene();
  for (auto _ : state) {
    switch (backend) {
      case Backend::kCga: benchmark::DoNotOptimize(reference::skin_cga(s.model, s.pose)); break;
      case Backend::kLbs: benchmark::DoNotOptimize(reference::skin_lbs(s.model, s.pose)); break;
      case Backend::kDq: benchmark::DoNotOptimize(reference::skin_dq(s.model, s.pose)); break;
    }
  }
  state.SetItemsProcessed(state.iterations() * s.model.mesh.vertex_count());
}

void BM_Cut(benchmark::State& state, bool parallel) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(cut(s.model, s.plane, {{}, parallel}));
}

void BM_ScalpelHitLinear(benchmark::State& state, bool parallel) {
  const Scene& s = scene();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scalpel_hit(s.model.mesh, s.scalpel[0], nullptr, parallel));
  }
}

void BM_ScalpelHitBvh(benchmark::State& state) {
  const Scene& s = scene();
  const Bvh bvh(s.model.mesh);
  for (auto _ : state) benchmark::DoNotOptimize(scalpel_hit(s.model.mesh, s.scalpel[0], &bvh));
}

void BM_BvhBuild(benchmark::State& state) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(Bvh(s.model.mesh));
}

void BM_Tear(benchmark::State& state, bool accelerate) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(tear(s.model, s.scalpel, {accelerate, false, {}}));
}

BENCHMARK_CAPTURE(BM_Skin, cga_parallel, Backend::kCga, true);
BENCHMARK_CAPTURE(BM_Skin, cga_serial, Backend::kCga, false);
BENCHMARK_CAPTURE(BM_SkinReference, cga, Backend::kCga);
BENCHMARK_CAPTURE(BM_Skin, lbs_parallel, Backend::kLbs, true);
BENCHMARK_CAPTURE(BM_Skin, lbs_serial, Backend::kLbs, false);
BENCHMARK_CAPTURE(BM_SkinReference, lbs, Backend::kLbs);
BENCHMARK_CAPTURE(BM_Skin, dq_parallel, Backend::kDq, true);
BENCHMARK_CAPTURE(BM_Skin, dq_serial, Backend::kDq, false);
BENCHMARK_CAPTURE(BM_SkinReference, dq, Backend::kDq);
BENCHMARK_CAPTURE(BM_Cut, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Cut, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ScalpelHitLinear, parallel, true);
BENCHMARK_CAPTURE(BM_ScalpelHitLinear, serial, false);
BENCHMARK(BM_ScalpelHitBvh);
BENCHMARK(BM_BvhBuild);
BENCHMARK_CAPTURE(BM_Tear, linear, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Tear, bvh, true)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
