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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cgaskin::cga {

/// The conformal model R(4,1).
///
/// Basis vectors are {e1, e2, e3, e+, e-} with e1^2 = e2^2 = e3^2 = e+^2 = +1
/// and e-^2 = -1. A blade is stored as a 5-bit mask (bit 0 = e1, bit 1 = e2,
/// bit 2 = e3, bit 3 = e+, bit 4 = e-) whose set bits are taken in ascending
/// order. Coefficients are laid out grade-then-lexicographic:
///
///   0      : 1
///   1..5   : e1 e2 e3 e+ e-
///   6..15  : e12 e13 e1+ e1- e23 e2+ e2- e3+ e3- e+-
///   16..25 : e123 e12+ e12- e13+ e13- e1+- e23+ e23- e2+- e3+-
///   26..30 : e123+ e123- e12+- e13+- e23+-
///   31     : e123+-
///
/// The null vectors are derived: ninf = e- + e+, no = (e- - e+) / 2, so that
/// ninf^2 = no^2 = 0 and no . ninf = -1.
inline constexpr int kDimension = 5;
inline constexpr int kBladeCount = 32;

namespace blade {
inline constexpr int kScalar = 0;
inline constexpr int kE1 = 1, kE2 = 2, kE3 = 3, kEp = 4, kEm = 5;
inline constexpr int kE12 = 6, kE13 = 7, kE1p = 8, kE1m = 9, kE23 = 10;
inline constexpr int kE2p = 11, kE2m = 12, kE3p = 13, kE3m = 14, kEpm = 15;
inline constexpr int kPseudoscalar = 31;
}  // namespace blade

/// Frozen blade tables, generated at compile time from the rules above.
struct BladeTables {
  std::array<std::uint8_t, kBladeCount> mask{};       // index -> bitmask
  std::array<std::uint8_t, kBladeCount> index_of{};   // bitmask -> index
  std::array<std::uint8_t, kBladeCount> grade{};
  // product_index[i][j] / product_sign[i][j]: blade_i * blade_j =
  // sign * blade_{index}.
  std::array<std::array<std::uint8_t, kBladeCount>, kBladeCount> product_index{};
  std::array<std::array<std::int8_t, kBladeCount>, kBladeCount> product_sign{};
};

const BladeTables& tables();

/// Human-readable blade name, e.g. "e13+" or "1".
const char* blade_name(int index);

class Multivector {
 public:
  constexpr Multivector() = default;
  explicit Multivector(const std::array<double, kBladeCount>& c) : c_(c) {}

  static Multivector scalar(double s) {
    Multivector m;
    m.c_[0] = s;
    return m;
  }
  static Multivector basis(int blade_index, double coefficient = 1.0);
  /// Grade-1 element v1 e1 + v2 e2 + v3 e3.
  static Multivector vector(const Eigen::Vector3d& v);

  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double, kBladeCount> coefficients() const { return c_; }

  double scalar_part() const { return c_[0]; }
  /// Largest absolute coefficient.
  double max_abs() const;
  bool operator==(const Multivector&) const = default;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

 private:
  std::array<double, kBladeCount> c_{};
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
/// Geometric product.
Multivector operator*(const Multivector& a, const Multivector& b);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);
Multivector left_contraction(const Multivector& a, const Multivector& b);
/// Grade-0 part of the geometric product; for vectors this is the inner
/// product of the metric.
double scalar_product(const Multivector& a, const Multivector& b);
/// Throws ParameterError unless 0 <= k <= 5.
Multivector grade_project(const Multivector& a, int k);
Multivector reverse(const Multivector& a);

Multivector n_inf();
Multivector n_o();

/// Even-grade multivector used through the sandwich product: rotors,
/// translators, dilators and their products.
class Versor {
 public:
  Versor() : value_(Multivector::scalar(1.0)) {}
  /// Throws ParameterError if `m` has a non-negligible odd-grade part.
  static Versor from_multivector(const Multivector& m);
  static Versor identity() { return Versor(); }

  const Multivector& value() const { return value_; }
  bool operator==(const Versor&) const = default;

  friend Versor operator*(const Versor& a, const Versor& b) {
    return Versor(a.value_ * b.value_);
  }

 private:
  explicit Versor(const Multivector& m) : value_(m) {}
  friend Versor normalize_versor(const Versor&);
  friend Versor versor_inverse(const Versor&);
  friend Versor blend_linear(std::span<const std::pair<double, Versor>>);
  friend Versor make_translator(const Eigen::Vector3d&);
  friend Versor make_rotor(const Eigen::Vector3d&, double);
  friend Versor make_dilator(double);
  friend Versor rotor_from_quaternion(const Eigen::Quaterniond&);

  Multivector value_;
};

/// reverse(V) / <V reverse(V)>_0. Throws SingularVersor when that scalar is
/// below 1e-14 in magnitude.
Versor versor_inverse(const Versor& v);
/// Scales V so that <V reverse(V)>_0 = 1.
Versor normalize_versor(const Versor& v);
/// V X V^-1.
Multivector apply_versor(const Versor& v, const Multivector& x);
/// Sandwich with a precomputed inverse; used by the skinning kernels.
Multivector apply_versor(const Versor& v, const Versor& v_inverse,
                         const Multivector& x);

/// Normalized sum of weighted versors. Weights must sum to 1 within 1e-9.
/// A single effective input (or identical inputs) is returned unchanged.
/// Throws DegenerateBlend when the sum has a vanishing norm.
Versor blend_linear(std::span<const std::pair<double, Versor>> pairs);
Versor blend_linear(std::initializer_list<std::pair<double, Versor>> pairs);

/// up(v) = v + 1/2 |v|^2 ninf + no.
Multivector up(const Eigen::Vector3d& v);
/// Euclidean part after scaling the no-coefficient to 1. Throws
/// PointAtInfinity when that coefficient is below 1e-14 in magnitude.
Eigen::Vector3d down(const Multivector& x);

/// T = 1 - 1/2 t ninf.
Versor make_translator(const Eigen::Vector3d& t);
/// R = cos(a/2) - sin(a/2) (x e23 + y e31 + z e12); right-handed about
/// `axis`. Throws ParameterError unless |axis| = 1 within 1e-9.
Versor make_rotor(const Eigen::Vector3d& axis, double angle);
/// D = cosh(ln(s)/2) + sinh(ln(s)/2) no^ninf, scaling points by s about the
/// origin. Throws ParameterError unless s > 0.
Versor make_dilator(double s);

/// Unit quaternion (w, x, y, z) -> rotor w - x e23 - y e31 - z e12.
Versor rotor_from_quaternion(const Eigen::Quaterniond& q);
/// Inverse of rotor_from_quaternion for pure rotors.
Eigen::Quaterniond quaternion_from_rotor(const Versor& r);

/// IPNS plane n + d ninf. For a conformal point P = up(p),
/// scalar_product(P, plane) = n . p - d exactly, i.e. the Euclidean signed
/// distance (positive on the side `normal` points to). Throws
/// ParameterError unless |normal| = 1 within 1e-9.
Multivector make_plane(const Eigen::Vector3d& normal, double d);

/// 4x4 homogeneous matrix with the same action on points as `v`.
Eigen::Matrix4d versor_to_matrix(const Versor& v);

}  // namespace cgaskin::cga
