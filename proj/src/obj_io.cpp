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

#include <cstdio>
#include <fstream>

#include "cgaskin/errors.hpp"
#include "cgaskin/rig_io.hpp"

namespace cgaskin {

std::string obj_string(const Mesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 24);
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out += buf;
  }
  for (const Face& f : mesh.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

void export_obj(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << obj_string(mesh);
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::filesystem::path> export_obj_sequence(
    std::span<const Mesh> meshes, const std::filesystem::path& dir,
    int first_index) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  paths.reserve(meshes.size());
  char name[32];
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    std::snprintf(name, sizeof name, "frame_%04d.obj",
                  first_index + static_cast<int>(i));
    paths.push_back(dir / name);
    export_obj(meshes[i], paths.back());
  }
  return paths;
}

}  // namespace cgaskin
