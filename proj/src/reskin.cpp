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

#include "cgaskin/reskin.hpp"

#include <algorithm>
#include <map>

#include "cgaskin/errors.hpp"

namespace cgaskin {

InfluenceList truncate_influences(InfluenceList list) {
  list = canonical_influences(std::move(list));
  if (list.empty()) throw NumericalFailure("weight blend is identically zero");
  if (list.size() > static_cast<std::size_t>(kMaxInfluences)) {
    std::stable_sort(list.begin(), list.end(), [](const Influence& x, const Influence& y) {
      return x.weight > y.weight;
    });
    list.resize(kMaxInfluences);
  }
  double sum = 0.0;
  for (const Influence& inf : list) sum += inf.weight;
  for (Influence& inf : list) inf.weight /= sum;
  std::sort(list.begin(), list.end(),
            [](const Influence& x, const Influence& y) { return x.bone < y.bone; });
  return list;
}

InfluenceList weight_by_barycentric(const InfluenceList& a, const InfluenceList& b,
                                    const InfluenceList& c,
                                    const std::array<double, 3>& bary,
                                    const WeightFilter& filter) {
  std::map<int, double> mix;
  const InfluenceList* corners[3] = {&a, &b, &c};
  for (int k = 0; k < 3; ++k) {
    for (const Influence& inf : *corners[k]) mix[inf.bone] += bary[k] * inf.weight;
  }
  InfluenceList list;
  list.reserve(mix.size());
  for (const auto& [bone, w] : mix) {
    if (w != 0.0) list.push_back({bone, w});
  }
  if (filter) list = filter(std::move(list));
  return truncate_influences(std::move(list));
}

InfluenceList weight_by_edge(const InfluenceList& a, const InfluenceList& b, double lambda,
                             const WeightFilter& filter) {
  return weight_by_barycentric(a, b, {}, {1.0 - lambda, lambda, 0.0}, filter);
}

}  // namespace cgaskin
