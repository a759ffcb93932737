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

#include <stdexcept>
#include <string>

namespace cgaskin {

/// Base of every error raised by the library. `code()` is the stable
/// machine-readable name written into metrics files.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define CGASKIN_DEFINE_ERROR(Name, Base)                              \
  class Name : public Base {                                          \
   public:                                                            \
    explicit Name(const std::string& what) : Base(#Name, what) {}     \
                                                                      \
   protected:                                                         \
    Name(std::string code, const std::string& what)                   \
        : Base(std::move(code), what) {}                              \
  };

CGASKIN_DEFINE_ERROR(ParameterError, Error)
CGASKIN_DEFINE_ERROR(SingularVersor, Error)
CGASKIN_DEFINE_ERROR(PointAtInfinity, Error)
CGASKIN_DEFINE_ERROR(DegenerateBlend, Error)
CGASKIN_DEFINE_ERROR(NumericalFailure, Error)
CGASKIN_DEFINE_ERROR(IoError, Error)

// Rig loading and model validation.
CGASKIN_DEFINE_ERROR(LoadError, Error)
CGASKIN_DEFINE_ERROR(SchemaError, LoadError)
CGASKIN_DEFINE_ERROR(HierarchyError, LoadError)
CGASKIN_DEFINE_ERROR(WeightSumError, LoadError)
CGASKIN_DEFINE_ERROR(NonConformalMatrix, LoadError)
CGASKIN_DEFINE_ERROR(MeshError, LoadError)

// Cutting and tearing.
CGASKIN_DEFINE_ERROR(NonManifoldCut, Error)
CGASKIN_DEFINE_ERROR(NoIntersection, Error)
CGASKIN_DEFINE_ERROR(DegenerateTearStep, Error)
CGASKIN_DEFINE_ERROR(PathNotFound, Error)

#undef CGASKIN_DEFINE_ERROR

class AmbiguousIntersection : public Error {
 public:
  AmbiguousIntersection(int count, const std::string& what)
      : Error("AmbiguousIntersection", what), count_(count) {}
  int count() const noexcept { return count_; }

 private:
  int count_;
};

}  // namespace cgaskin
