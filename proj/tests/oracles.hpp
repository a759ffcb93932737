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

// Slow reference computations written without the library's tables.

#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cgaskin/cga.hpp"

namespace cgaskin::oracle {

/// Basis vector squares: e1, e2, e3, e+ square to +1, e- to -1.
inline constexpr std::array<int, 5> kMetric = {1, 1, 1, 1, -1};

struct CayleyTable {
  std::array<int, 32> mask{};
  std::array<int, 32> index_of{};
  std::array<std::array<int, 32>, 32> index{};
  std::array<std::array<int, 32>, 32> sign{};
};

/// Blades as sorted lists of basis-vector indices; grade first, then
/// lexicographic on the lists.
inline std::vector<std::vector<int>> ordered_blades() {
  std::vector<std::vector<int>> blades;
  for (int m = 0; m < 32; ++m) {
    std::vector<int> list;
    for (int b = 0; b < 5; ++b) {
      if (m & (1 << b)) list.push_back(b);
    }
    blades.push_back(list);
  }
  std::sort(blades.begin(), blades.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return blades;
}

/// Concatenate, bubble sort with a sign flip per swap, cancel equal
/// neighbours using the metric.
inline std::pair<std::vector<int>, int> multiply_lists(std::vector<int> word) {
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        sign = -sign;
        changed = true;
      } else if (word[i] == word[i + 1]) {
        sign *= kMetric[static_cast<std::size_t>(word[i])];
        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return {word, sign};
}

inline CayleyTable cayley_table() {
  CayleyTable t;
  const auto blades = ordered_blades();
  auto mask_of = [](const std::vector<int>& list) {
    int m = 0;
    for (int b : list) m |= 1 << b;
    return m;
  };
  for (int i = 0; i < 32; ++i) {
    t.mask[i] = mask_of(blades[i]);
    t.index_of[t.mask[i]] = i;
  }
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      std::vector<int> word = blades[i];
      word.insert(word.end(), blades[j].begin(), blades[j].end());
      const auto [result, sign] = multiply_lists(word);
      t.index[i][j] = t.index_of[mask_of(result)];
      t.sign[i][j] = sign;
    }
  }
  return t;
}

inline int grade_of(int index) {
  static const auto blades = ordered_blades();
  return static_cast<int>(blades[static_cast<std::size_t>(index)].size());
}

/// Sum over blade pairs, keeping terms whose result grade passes `keep`.
template <class Keep>
cga::Multivector product_filtered(const cga::Multivector& a, const cga::Multivector& b,
                                  Keep keep) {
  static const CayleyTable t = cayley_table();
  cga::Multivector out;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      const int k = t.index[i][j];
      if (keep(grade_of(i), grade_of(j), grade_of(k))) out[k] += t.sign[i][j] * a[i] * b[j];
    }
  }
  return out;
}

inline cga::Multivector product(const cga::Multivector& a, const cga::Multivector& b) {
  return product_filtered(a, b, [](int, int, int) { return true; });
}

inline cga::Multivector outer(const cga::Multivector& a, const cga::Multivector& b) {
  return product_filtered(a, b, [](int r, int s, int k) { return k == r + s; });
}

inline cga::Multivector left_contraction(const cga::Multivector& a, const cga::Multivector& b) {
  return product_filtered(a, b, [](int r, int s, int k) { return s >= r && k == s - r; });
}

/// Solves V X = 1 as a dense 32x32 system.
inline cga::Multivector inverse_by_solve(const cga::Multivector& v) {
  Eigen::Matrix<double, 32, 32> left;
  for (int j = 0; j < 32; ++j) {
    const cga::Multivector col = product(v, cga::Multivector::basis(j));
    for (int i = 0; i < 32; ++i) left(i, j) = col[i];
  }
  Eigen::Matrix<double, 32, 1> rhs = Eigen::Matrix<double, 32, 1>::Zero();
  rhs[0] = 1.0;
  const Eigen::Matrix<double, 32, 1> x = left.fullPivLu().solve(rhs);
  cga::Multivector out;
  for (int i = 0; i < 32; ++i) out[i] = x[i];
  return out;
}

}  // namespace cgaskin::oracle
