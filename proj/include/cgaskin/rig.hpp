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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgaskin/mesh.hpp"
#include "cgaskin/transform.hpp"

namespace cgaskin {

inline constexpr int kMaxInfluences = 4;

struct Influence {
  int bone = 0;
  double weight = 0.0;
  bool operator==(const Influence&) const = default;
};

/// At most kMaxInfluences entries; weights non-negative and summing to 1.
using InfluenceList = std::vector<Influence>;

struct Bone {
  int id = 0;
  std::optional<int> parent;
  /// Bind-pose inverse with respect to the root (B_n / O_n).
  Trs offset;
  /// Rest transform relative to the parent (t_i).
  Trs local_bind;

  cga::Versor offset_versor() const { return offset.to_versor(); }
  cga::Versor local_bind_versor() const { return local_bind.to_versor(); }
  bool operator==(const Bone&) const = default;
};

struct TrsKey {
  double time = 0.0;
  Trs trs;
  bool operator==(const TrsKey&) const = default;
};

/// Keys sorted by strictly increasing time.
using Track = std::vector<TrsKey>;

struct Clip {
  std::map<int, Track> tracks;  // bone id -> keys
  bool operator==(const Clip&) const = default;
};

struct RiggedModel {
  Mesh mesh;
  std::vector<Bone> bones;  // bones[i].id == i
  std::vector<InfluenceList> weights;  // one list per vertex
  std::map<std::string, Clip> clips;
  Trs global_inverse;  // G; identity unless a document says otherwise

  int root_bone() const;
};

/// Parent-before-child order over the bone tree.
std::vector<int> bone_order(const RiggedModel& model);

/// Global bind transform of every bone (root = identity).
std::vector<Trs> global_bind(const RiggedModel& model);

/// Offsets set to the inverse of the global bind transforms.
void set_offsets_from_bind(RiggedModel& model);

/// Throws the LoadError family: SchemaError, HierarchyError, WeightSumError,
/// MeshError. Applied on load and to every model produced by cut / tear.
void validate_model(const RiggedModel& model);

/// Throws WeightSumError unless the list is a valid influence set.
void validate_influences(const InfluenceList& list, int vertex, int bone_count);

/// Sorts by bone id and drops zero weights.
InfluenceList canonical_influences(InfluenceList list);

}  // namespace cgaskin
