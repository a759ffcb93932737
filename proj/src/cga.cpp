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

#include "cgaskin/cga.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cgaskin/errors.hpp"

namespace cgaskin::cga {
namespace {

constexpr int metric_of(int basis_bit) { return basis_bit == 4 ? -1 : 1; }

// Sign picked up when the concatenation of two canonical blades is sorted
// back into ascending order, times the metric of every cancelled pair.
constexpr int product_sign_of(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  int sign = (swaps % 2 == 0) ? 1 : -1;
  for (unsigned common = a & b; common != 0; common &= common - 1) {
    sign *= metric_of(std::countr_zero(common));
  }
  return sign;
}

// Grade first, then lexicographic on the ascending list of basis indices.
constexpr bool blade_less(unsigned a, unsigned b) {
  const int ga = std::popcount(a), gb = std::popcount(b);
  if (ga != gb) return ga < gb;
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a), ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

constexpr BladeTables make_tables() {
  BladeTables t;
  std::array<unsigned, kBladeCount> order{};
  for (unsigned m = 0; m < kBladeCount; ++m) order[m] = m;
  // Insertion sort keeps this usable in a constant expression.
  for (int i = 1; i < kBladeCount; ++i) {
    for (int j = i; j > 0 && blade_less(order[j], order[j - 1]); --j) {
      const unsigned tmp = order[j];
      order[j] = order[j - 1];
      order[j - 1] = tmp;
    }
  }
  for (int i = 0; i < kBladeCount; ++i) {
    t.mask[i] = static_cast<std::uint8_t>(order[i]);
    t.index_of[order[i]] = static_cast<std::uint8_t>(i);
    t.grade[i] = static_cast<std::uint8_t>(std::popcount(order[i]));
  }
  for (int i = 0; i < kBladeCount; ++i) {
    for (int j = 0; j < kBladeCount; ++j) {
      const unsigned a = t.mask[i], b = t.mask[j];
      t.product_index[i][j] = t.index_of[a ^ b];
      t.product_sign[i][j] =
          static_cast<std::int8_t>(product_sign_of(a, b));
    }
  }
  return t;
}

constexpr BladeTables kTables = make_tables();

static_assert(kTables.mask[blade::kE1] == 0b00001);
static_assert(kTables.mask[blade::kEm] == 0b10000);
static_assert(kTables.mask[blade::kE13] == 0b00101);
static_assert(kTables.mask[blade::kEpm] == 0b11000);
static_assert(kTables.mask[blade::kPseudoscalar] == 0b11111);
static_assert(kTables.product_sign[blade::kEm][blade::kEm] == -1);

constexpr int reverse_sign(int grade) {
  return ((grade * (grade - 1) / 2) % 2 == 0) ? 1 : -1;
}

}  // namespace

const BladeTables& tables() { return kTables; }

const char* blade_name(int index) {
  static const std::array<std::string, kBladeCount> names = [] {
    std::array<std::string, kBladeCount> out;
    constexpr const char* symbols[] = {"1", "2", "3", "+", "-"};
    for (int i = 0; i < kBladeCount; ++i) {
      const unsigned m = kTables.mask[i];
      if (m == 0) {
        out[i] = "1";
        continue;
      }
      std::string s = "e";
      for (int b = 0; b < kDimension; ++b) {
        if (m & (1u << b)) s += symbols[b];
      }
      out[i] = s;
    }
    return out;
  }();
  if (index < 0 || index >= kBladeCount) {
    throw ParameterError("blade index out of range: " + std::to_string(index));
  }
  return names[index].c_str();
}

Multivector Multivector::basis(int blade_index, double coefficient) {
  if (blade_index < 0 || blade_index >= kBladeCount) {
    throw ParameterError("blade index out of range: " +
                         std::to_string(blade_index));
  }
  Multivector m;
  m.c_[blade_index] = coefficient;
  return m;
}

Multivector Multivector::vector(const Eigen::Vector3d& v) {
  Multivector m;
  m.c_[blade::kE1] = v.x();
  m.c_[blade::kE2] = v.y();
  m.c_[blade::kE3] = v.z();
  return m;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  for (int i = 0; i < kBladeCount; ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  for (int i = 0; i < kBladeCount; ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  std::array<double, kBladeCount> r{};
  for (int i = 0; i < kBladeCount; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const auto& idx = kTables.product_index[i];
    const auto& sgn = kTables.product_sign[i];
    for (int j = 0; j < kBladeCount; ++j) {
      r[idx[j]] += sgn[j] * ai * b[j];
    }
  }
  return Multivector(r);
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  std::array<double, kBladeCount> r{};
  for (int i = 0; i < kBladeCount; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < kBladeCount; ++j) {
      if ((kTables.mask[i] & kTables.mask[j]) != 0) continue;
      r[kTables.product_index[i][j]] +=
          kTables.product_sign[i][j] * a[i] * b[j];
    }
  }
  return Multivector(r);
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  std::array<double, kBladeCount> r{};
  for (int i = 0; i < kBladeCount; ++i) {
    if (a[i] == 0.0) continue;
    const unsigned mi = kTables.mask[i];
    for (int j = 0; j < kBladeCount; ++j) {
      if ((mi & ~static_cast<unsigned>(kTables.mask[j])) != 0) continue;
      r[kTables.product_index[i][j]] +=
          kTables.product_sign[i][j] * a[i] * b[j];
    }
  }
  return Multivector(r);
}

double scalar_product(const Multivector& a, const Multivector& b) {
  double s = 0.0;
  for (int i = 0; i < kBladeCount; ++i) {
    s += kTables.product_sign[i][i] * a[i] * b[i];
  }
  return s;
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > kDimension) {
    throw ParameterError("grade must lie in [0, 5], got " + std::to_string(k));
  }
  Multivector r;
  for (int i = 0; i < kBladeCount; ++i) {
    if (kTables.grade[i] == k) r[i] = a[i];
  }
  return r;
}

Multivector reverse(const Multivector& a) {
  Multivector r = a;
  for (int i = 0; i < kBladeCount; ++i) {
    if (reverse_sign(kTables.grade[i]) < 0) r[i] = -r[i];
  }
  return r;
}

Multivector n_inf() {
  Multivector m;
  m[blade::kEp] = 1.0;
  m[blade::kEm] = 1.0;
  return m;
}

Multivector n_o() {
  Multivector m;
  m[blade::kEp] = -0.5;
  m[blade::kEm] = 0.5;
  return m;
}

Versor Versor::from_multivector(const Multivector& m) {
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  for (int i = 0; i < kBladeCount; ++i) {
    if (kTables.grade[i] % 2 == 1 && std::abs(m[i]) > tol) {
      throw ParameterError(std::string("versor has odd-grade component ") +
                           blade_name(i));
    }
  }
  return Versor(m);
}

Versor versor_inverse(const Versor& v) {
  const Multivector rev = reverse(v.value());
  const double s = scalar_product(v.value(), rev);
  if (!(std::abs(s) >= 1e-14)) {
    throw SingularVersor("versor norm vanishes: <V ~V> = " + std::to_string(s));
  }
  return Versor(rev * (1.0 / s));
}

Versor normalize_versor(const Versor& v) {
  const double s = scalar_product(v.value(), reverse(v.value()));
  if (!(std::abs(s) >= 1e-14)) {
    throw SingularVersor("cannot normalize versor with <V ~V> = " +
                         std::to_string(s));
  }
  return Versor(v.value() * (1.0 / std::sqrt(std::abs(s))));
}

Multivector apply_versor(const Versor& v, const Multivector& x) {
  return apply_versor(v, versor_inverse(v), x);
}

Multivector apply_versor(const Versor& v, const Versor& v_inverse,
                         const Multivector& x) {
  return geometric_product(geometric_product(v.value(), x), v_inverse.value());
}

Versor blend_linear(std::span<const std::pair<double, Versor>> pairs) {
  if (pairs.empty()) throw ParameterError("blend_linear needs at least one pair");
  double total = 0.0;
  for (const auto& [w, v] : pairs) {
    if (!std::isfinite(w)) throw ParameterError("non-finite blend weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("blend weights sum to " + std::to_string(total));
  }
  const Versor* first = nullptr;
  bool all_equal = true;
  for (const auto& [w, v] : pairs) {
    if (w == 0.0) continue;
    if (first == nullptr) {
      first = &v;
    } else if (!(v == *first)) {
      all_equal = false;
    }
  }
  if (first == nullptr) throw ParameterError("all blend weights are zero");
  if (all_equal) return *first;

  Multivector sum;
  for (const auto& [w, v] : pairs) {
    if (w != 0.0) sum += v.value() * w;
  }
  const double n2 = scalar_product(sum, reverse(sum));
  if (!(n2 >= 1e-12)) {
    throw DegenerateBlend("blended versor has vanishing norm " +
                          std::to_string(n2));
  }
  return Versor(sum * (1.0 / std::sqrt(n2)));
}

Versor blend_linear(std::initializer_list<std::pair<double, Versor>> pairs) {
  return blend_linear(std::span<const std::pair<double, Versor>>(
      pairs.begin(), pairs.size()));
}

Multivector up(const Eigen::Vector3d& v) {
  const double half_sq = 0.5 * v.squaredNorm();
  Multivector m = Multivector::vector(v);
  m[blade::kEp] = half_sq - 0.5;
  m[blade::kEm] = half_sq + 0.5;
  return m;
}

Eigen::Vector3d down(const Multivector& x) {
  // no-coefficient of a grade-1 element: -(X . ninf) = x- - x+.
  const double w = x[blade::kEm] - x[blade::kEp];
  if (!(std::abs(w) >= 1e-14)) {
    throw PointAtInfinity("no-coefficient vanishes: " + std::to_string(w));
  }
  return Eigen::Vector3d(x[blade::kE1], x[blade::kE2], x[blade::kE3]) / w;
}

Versor make_translator(const Eigen::Vector3d& t) {
  Multivector m = Multivector::scalar(1.0);
  // -1/2 (t_i e_i)(e+ + e-) with e_i e+ = e_i+ and e_i e- = e_i-.
  m[blade::kE1p] = -0.5 * t.x();
  m[blade::kE1m] = -0.5 * t.x();
  m[blade::kE2p] = -0.5 * t.y();
  m[blade::kE2m] = -0.5 * t.y();
  m[blade::kE3p] = -0.5 * t.z();
  m[blade::kE3m] = -0.5 * t.z();
  return Versor(m);
}

Versor make_rotor(const Eigen::Vector3d& axis, double angle) {
  if (!std::isfinite(angle) || !(std::abs(axis.norm() - 1.0) <= 1e-9)) {
    throw ParameterError("rotor axis must be unit length and angle finite");
  }
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  return rotor_from_quaternion(
      Eigen::Quaterniond(c, s * axis.x(), s * axis.y(), s * axis.z()));
}

Versor make_dilator(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw ParameterError("dilation factor must be positive, got " +
                         std::to_string(s));
  }
  const double half_log = 0.5 * std::log(s);
  Multivector m = Multivector::scalar(std::cosh(half_log));
  // no ^ ninf = e- ^ e+ = -e+-.
  m[blade::kEpm] = -std::sinh(half_log);
  return Versor(m);
}

Versor rotor_from_quaternion(const Eigen::Quaterniond& q) {
  Multivector m = Multivector::scalar(q.w());
  m[blade::kE23] = -q.x();
  m[blade::kE13] = q.y();  // -y e31 = +y e13
  m[blade::kE12] = -q.z();
  return Versor(m);
}

Eigen::Quaterniond quaternion_from_rotor(const Versor& r) {
  const Multivector& m = r.value();
  return Eigen::Quaterniond(m[blade::kScalar], -m[blade::kE23],
                            m[blade::kE13], -m[blade::kE12]);
}

Multivector make_plane(const Eigen::Vector3d& normal, double d) {
  if (!(std::abs(normal.norm() - 1.0) <= 1e-9) || !std::isfinite(d)) {
    throw ParameterError("plane normal must be unit length");
  }
  Multivector m = Multivector::vector(normal);
  m[blade::kEp] = d;
  m[blade::kEm] = d;
  return m;
}

Eigen::Matrix4d versor_to_matrix(const Versor& v) {
  const Versor inv = versor_inverse(v);
  const Eigen::Vector3d origin =
      down(apply_versor(v, inv, up(Eigen::Vector3d::Zero())));
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::Vector3d image =
        down(apply_versor(v, inv, up(Eigen::Vector3d::Unit(axis))));
    m.block<3, 1>(0, axis) = image - origin;
  }
  m.block<3, 1>(0, 3) = origin;
  return m;
}

}  // namespace cgaskin::cga
