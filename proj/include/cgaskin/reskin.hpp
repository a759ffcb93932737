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
#include <functional>

#include "cgaskin/rig.hpp"

namespace cgaskin {

struct BaryCoord {
  int face = -1;
  std::array<double, 3> w{1.0, 0.0, 0.0};  // (p, q, r) for the face corners
};

/// Hook applied to the blended weights (sorted by bone, zeros dropped)
/// before truncation. The default is the identity.
using WeightFilter = std::function<InfluenceList(InfluenceList)>;

/// w = p wA + q wB + r wC, sorted by bone with zeros dropped. When more than
/// 4 entries remain the 4 largest are kept (ties go to the lower bone id).
/// The result is renormalised to sum to 1.
InfluenceList weight_by_barycentric(const InfluenceList& a, const InfluenceList& b,
                                    const InfluenceList& c,
                                    const std::array<double, 3>& bary,
                                    const WeightFilter& filter = {});

/// weight_by_barycentric(a, b, {}, {1 - lambda, lambda, 0}).
InfluenceList weight_by_edge(const InfluenceList& a, const InfluenceList& b, double lambda,
                             const WeightFilter& filter = {});

/// Top-4 truncation and renormalisation of an arbitrary sparse weight list.
InfluenceList truncate_influences(InfluenceList list);

}  // namespace cgaskin
