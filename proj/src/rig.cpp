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

#include "cgaskin/rig.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

void validate_trs(const Trs& t, const std::string& what) {
  if (!t.translation.allFinite() || !t.rotation.coeffs().allFinite() ||
      !std::isfinite(t.scale)) {
    throw SchemaError(what + " has non-finite values");
  }
  if (std::abs(t.rotation.norm() - 1.0) > 1e-9) {
    throw SchemaError(what + " rotation quaternion is not unit length");
  }
  if (!(t.scale > 0.0)) throw SchemaError(what + " scale must be positive");
}

bool is_identity(const Trs& t) {
  return t.translation.cwiseAbs().maxCoeff() <= 1e-12 &&
         std::abs(std::abs(t.rotation.w()) - 1.0) <= 1e-12 &&
         std::abs(t.scale - 1.0) <= 1e-12;
}

}  // namespace

int RiggedModel::root_bone() const {
  for (const Bone& b : bones) {
    if (!b.parent) return b.id;
  }
  throw HierarchyError("skeleton has no root bone");
}

std::vector<int> bone_order(const RiggedModel& model) {
  const int n = static_cast<int>(model.bones.size());
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  int root = -1;
  for (const Bone& b : model.bones) {
    if (b.parent) {
      children[*b.parent].push_back(b.id);
    } else {
      root = b.id;
    }
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  if (root < 0) return order;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int c : children[order[i]]) order.push_back(c);
  }
  return order;
}

std::vector<Trs> global_bind(const RiggedModel& model) {
  std::vector<Trs> global(model.bones.size());
  for (int b : bone_order(model)) {
    const Bone& bone = model.bones[b];
    global[b] = bone.parent ? compose(global[*bone.parent], bone.local_bind)
                            : Trs::identity();
  }
  return global;
}

void set_offsets_from_bind(RiggedModel& model) {
  const std::vector<Trs> global = global_bind(model);
  for (Bone& b : model.bones) b.offset = inverse(global[b.id]);
}

InfluenceList canonical_influences(InfluenceList list) {
  std::erase_if(list, [](const Influence& i) { return i.weight == 0.0; });
  std::sort(list.begin(), list.end(),
            [](const Influence& a, const Influence& b) { return a.bone < b.bone; });
  return list;
}

void validate_influences(const InfluenceList& list, int vertex, int bone_count) {
  const std::string where = "vertex " + std::to_string(vertex);
  if (list.empty()) throw WeightSumError(where + " has no bone influences");
  if (list.size() > static_cast<std::size_t>(kMaxInfluences)) {
    throw WeightSumError(where + " has " + std::to_string(list.size()) +
                         " influences (max 4)");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Influence& inf = list[i];
    if (inf.bone < 0 || inf.bone >= bone_count) {
      throw WeightSumError(where + " references unknown bone " +
                           std::to_string(inf.bone));
    }
    if (!(inf.weight >= 0.0) || !std::isfinite(inf.weight)) {
      throw WeightSumError(where + " has a negative or non-finite weight");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (list[j].bone == inf.bone) {
        throw WeightSumError(where + " lists bone " + std::to_string(inf.bone) +
                             " twice");
      }
    }
    sum += inf.weight;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw WeightSumError(where + " weights sum to " + std::to_string(sum));
  }
}

void validate_model(const RiggedModel& model) {
  validate_mesh(model.mesh);

  const int nb = static_cast<int>(model.bones.size());
  if (nb == 0) throw HierarchyError("skeleton has no bones");
  int roots = 0;
  for (int i = 0; i < nb; ++i) {
    const Bone& b = model.bones[i];
    if (b.id != i) {
      throw SchemaError("bone at position " + std::to_string(i) + " has id " +
                        std::to_string(b.id) + "; ids must equal list position");
    }
    if (b.parent) {
      if (*b.parent < 0 || *b.parent >= nb || *b.parent == i) {
        throw HierarchyError("bone " + std::to_string(i) +
                             " has invalid parent " + std::to_string(*b.parent));
      }
    } else {
      ++roots;
    }
    validate_trs(b.offset, "bone " + std::to_string(i) + " offset");
    validate_trs(b.local_bind, "bone " + std::to_string(i) + " bind");
  }
  if (roots != 1) {
    throw HierarchyError("skeleton must have exactly one root, found " +
                         std::to_string(roots));
  }
  if (static_cast<int>(bone_order(model).size()) != nb) {
    throw HierarchyError("bone parents contain a cycle");
  }
  const int root = model.root_bone();
  if (!is_identity(model.bones[root].local_bind)) {
    throw HierarchyError("root bone " + std::to_string(root) +
                         " must have an identity bind transform");
  }
  validate_trs(model.global_inverse, "global inverse");

  if (model.weights.size() != model.mesh.vertices.size()) {
    throw WeightSumError("weights list has " +
                         std::to_string(model.weights.size()) + " entries for " +
                         std::to_string(model.mesh.vertices.size()) + " vertices");
  }
  for (int v = 0; v < static_cast<int>(model.weights.size()); ++v) {
    validate_influences(model.weights[v], v, nb);
  }

  for (const auto& [name, clip] : model.clips) {
    for (const auto& [bone, keys] : clip.tracks) {
      const std::string where = "clip '" + name + "' bone " + std::to_string(bone);
      if (bone < 0 || bone >= nb) throw SchemaError(where + " does not exist");
      if (bone == root) throw SchemaError(where + " is the root, which is not animated");
      if (keys.empty()) throw SchemaError(where + " has no keys");
      for (std::size_t k = 0; k < keys.size(); ++k) {
        validate_trs(keys[k].trs, where + " key " + std::to_string(k));
        if (!std::isfinite(keys[k].time)) throw SchemaError(where + " has a non-finite time");
        if (k > 0 && !(keys[k].time > keys[k - 1].time)) {
          throw SchemaError(where + " key times are not strictly increasing");
        }
      }
    }
  }
}

}  // namespace cgaskin
