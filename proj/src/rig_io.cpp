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

#include "cgaskin/rig_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "cgaskin/errors.hpp"

namespace cgaskin {
namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  for (const char* k : required) {
    if (!obj.contains(k)) throw SchemaError(where + " is missing '" + k + "'");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) throw SchemaError(where + " has unknown field '" + key + "'");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + " must be an integer");
  return j.get<int>();
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(where + " must be [x, y, z]");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

Quat quat(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    throw SchemaError(where + " must be [w, x, y, z]");
  }
  return Quat(number(j[0], where), number(j[1], where), number(j[2], where),
              number(j[3], where));
}

Trs trs(const json& j, const std::string& where) {
  require_keys(j, where, {"translation", "rotation_quat", "scale"});
  Trs t;
  t.translation = vec3(j["translation"], where + ".translation");
  t.rotation = quat(j["rotation_quat"], where + ".rotation_quat");
  t.scale = number(j["scale"], where + ".scale");
  return t;
}

Mat4 matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw SchemaError(where + " must have 4 rows");
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) {
      throw SchemaError(where + " row " + std::to_string(r) + " must have 4 entries");
    }
    for (int c = 0; c < 4; ++c) m(r, c) = number(j[r][c], where);
  }
  return m;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Trs& t) {
  return json{{"translation", to_json(t.translation)},
              {"rotation_quat", json::array({t.rotation.w(), t.rotation.x(),
                                             t.rotation.y(), t.rotation.z()})},
              {"scale", t.scale}};
}

}  // namespace

RiggedModel load_rig(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("rig document is not valid JSON: ") + e.what());
  }
  require_keys(doc, "rig", {"rig_version", "vertices", "faces", "bones", "weights"},
               {"clips"});
  if (integer(doc["rig_version"], "rig_version") != kRigVersion) {
    throw SchemaError("unsupported rig_version " + doc["rig_version"].dump());
  }

  RiggedModel model;
  const json& verts = doc["vertices"];
  if (!verts.is_array()) throw SchemaError("vertices must be an array");
  model.mesh.vertices.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    model.mesh.vertices.push_back(vec3(verts[i], "vertices[" + std::to_string(i) + "]"));
  }
  const json& faces = doc["faces"];
  if (!faces.is_array()) throw SchemaError("faces must be an array");
  model.mesh.faces.reserve(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string where = "faces[" + std::to_string(i) + "]";
    if (!faces[i].is_array() || faces[i].size() != 3) {
      throw SchemaError(where + " must be [i, j, k]");
    }
    model.mesh.faces.push_back({integer(faces[i][0], where), integer(faces[i][1], where),
                                integer(faces[i][2], where)});
  }

  const json& bones = doc["bones"];
  if (!bones.is_array()) throw SchemaError("bones must be an array");
  for (std::size_t i = 0; i < bones.size(); ++i) {
    const std::string where = "bones[" + std::to_string(i) + "]";
    const json& jb = bones[i];
    require_keys(jb, where, {"id", "parent", "bind_trs"}, {"offset_trs", "offset_matrix"});
    const bool has_trs = jb.contains("offset_trs");
    const bool has_matrix = jb.contains("offset_matrix");
    if (has_trs == has_matrix) {
      throw SchemaError(where + " needs exactly one of offset_trs / offset_matrix");
    }
    Bone b;
    b.id = integer(jb["id"], where + ".id");
    if (!jb["parent"].is_null()) b.parent = integer(jb["parent"], where + ".parent");
    b.local_bind = trs(jb["bind_trs"], where + ".bind_trs");
    if (has_trs) {
      b.offset = trs(jb["offset_trs"], where + ".offset_trs");
    } else {
      try {
        b.offset = matrix_to_trs(matrix(jb["offset_matrix"], where + ".offset_matrix"));
      } catch (const NonConformalMatrix& e) {
        throw NonConformalMatrix(where + ".offset_matrix: " + e.what());
      }
    }
    model.bones.push_back(b);
  }

  const json& weights = doc["weights"];
  if (!weights.is_array()) throw SchemaError("weights must be an array");
  model.weights.reserve(weights.size());
  for (std::size_t v = 0; v < weights.size(); ++v) {
    const std::string where = "weights[" + std::to_string(v) + "]";
    if (!weights[v].is_array()) throw SchemaError(where + " must be an array");
    InfluenceList list;
    for (const json& pair : weights[v]) {
      if (!pair.is_array() || pair.size() != 2) {
        throw SchemaError(where + " entries must be [bone, weight]");
      }
      list.push_back({integer(pair[0], where), number(pair[1], where)});
    }
    model.weights.push_back(std::move(list));
  }

  if (doc.contains("clips")) {
    const json& clips = doc["clips"];
    if (!clips.is_object()) throw SchemaError("clips must be an object");
    for (const auto& [name, tracks] : clips.items()) {
      const std::string where = "clips." + name;
      if (!tracks.is_array()) throw SchemaError(where + " must be an array of tracks");
      Clip clip;
      for (std::size_t t = 0; t < tracks.size(); ++t) {
        const std::string tw = where + "[" + std::to_string(t) + "]";
        require_keys(tracks[t], tw, {"bone", "keys"});
        const int bone = integer(tracks[t]["bone"], tw + ".bone");
        if (clip.tracks.contains(bone)) {
          throw SchemaError(tw + " repeats bone " + std::to_string(bone));
        }
        Track keys;
        const json& jkeys = tracks[t]["keys"];
        if (!jkeys.is_array()) throw SchemaError(tw + ".keys must be an array");
        for (std::size_t k = 0; k < jkeys.size(); ++k) {
          const std::string kw = tw + ".keys[" + std::to_string(k) + "]";
          require_keys(jkeys[k], kw, {"t", "translation", "rotation_quat", "scale"});
          TrsKey key;
          key.time = number(jkeys[k]["t"], kw + ".t");
          key.trs.translation = vec3(jkeys[k]["translation"], kw + ".translation");
          key.trs.rotation = quat(jkeys[k]["rotation_quat"], kw + ".rotation_quat");
          key.trs.scale = number(jkeys[k]["scale"], kw + ".scale");
          keys.push_back(key);
        }
        clip.tracks.emplace(bone, std::move(keys));
      }
      model.clips.emplace(name, std::move(clip));
    }
  }

  validate_model(model);
  return model;
}

RiggedModel load_rig_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open rig file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_rig(ss.str());
}

std::string serialize_rig(const RiggedModel& model) {
  json doc;
  doc["rig_version"] = kRigVersion;
  json verts = json::array();
  for (const Vec3& v : model.mesh.vertices) verts.push_back(to_json(v));
  doc["vertices"] = std::move(verts);
  json faces = json::array();
  for (const Face& f : model.mesh.faces) faces.push_back(json::array({f[0], f[1], f[2]}));
  doc["faces"] = std::move(faces);
  json bones = json::array();
  for (const Bone& b : model.bones) {
    bones.push_back(json{{"id", b.id},
                         {"parent", b.parent ? json(*b.parent) : json(nullptr)},
                         {"offset_trs", to_json(b.offset)},
                         {"bind_trs", to_json(b.local_bind)}});
  }
  doc["bones"] = std::move(bones);
  json weights = json::array();
  for (const InfluenceList& list : model.weights) {
    json jl = json::array();
    for (const Influence& inf : list) jl.push_back(json::array({inf.bone, inf.weight}));
    weights.push_back(std::move(jl));
  }
  doc["weights"] = std::move(weights);
  json clips = json::object();
  for (const auto& [name, clip] : model.clips) {
    json tracks = json::array();
    for (const auto& [bone, keys] : clip.tracks) {
      json jk = json::array();
      for (const TrsKey& k : keys) {
        json key = to_json(k.trs);
        key["t"] = k.time;
        jk.push_back(std::move(key));
      }
      tracks.push_back(json{{"bone", bone}, {"keys", std::move(jk)}});
    }
    clips[name] = std::move(tracks);
  }
  doc["clips"] = std::move(clips);
  return doc.dump() + "\n";
}

void save_rig_file(const RiggedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write rig file " + path.string());
  out << serialize_rig(model);
  if (!out) throw IoError("failed writing rig file " + path.string());
}

}  // namespace cgaskin
