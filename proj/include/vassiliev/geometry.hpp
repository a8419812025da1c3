// Copyright 2026 The Vassiliev Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace vassiliev {

class OutsideUnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsideNError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of the unit square torus R^2 / Z^2, coordinates in [0,1).
struct TorusPoint {
  double x = 0;
  double y = 0;
};

/// A point of T^2 x [0,1].
struct MPoint {
  double x = 0;
  double y = 0;
  double h = 0;

  TorusPoint base() const { return {x, y}; }
};

using Vec2 = std::array<double, 2>;

TorusPoint reduce(double x, double y);

/// Shortest representative of b - a in R^2, components in [-1/2, 1/2).
Vec2 displacement(TorusPoint a, TorusPoint b);

double dist(TorusPoint a, TorusPoint b);

enum class BumpProfile {
  kStandard,  // exp(-1 / (1 - s^2))
  kSharp,     // exp(-1 / (1 - s^2)^2)
};

std::string to_string(BumpProfile p);
BumpProfile parse_bump_profile(const std::string& s);

/// Unnormalized radial profile as a function of s^2, zero for s^2 >= 1.
double bump(double s2, BumpProfile p);

/// 2 pi * integral_0^1 bump(s^2) s ds.
double bump_mass(BumpProfile p);

struct PropagatorParams {
  int n = 1;
  double epsilon = 0.15;
  BumpProfile profile = BumpProfile::kStandard;

  /// Height separation that defines N, and the radius of U_n: eps / 3n.
  double delta() const { return epsilon / (3.0 * n); }
  /// Support radius of the Thom form, delta^2.
  double r0() const { return delta() * delta(); }
  /// Constant C with C * bump(|v|^2 / r0^2) of unit mass over R^2.
  double thom_scale() const;

  /// Throws std::invalid_argument unless n >= 1 and 0 < epsilon < 1/2.
  void validate() const;
};

/// Coefficient of dv1 ^ dv2 of the Thom form at fiber vector v.
double thom_density(Vec2 v, const PropagatorParams& p);

/// Thom form on T Sigma in coordinates (x, y, v1, v2).
using TwoForm4 = std::array<std::array<double, 4>, 4>;
TwoForm4 thom_form(Vec2 v, const PropagatorParams& p);

/// g(x, y): the initial velocity of the unit-time geodesic from x to y.
/// Throws OutsideUnError unless dist < r0.
Vec2 geodesic_dir(const MPoint& x, const MPoint& y, const PropagatorParams& p);

/// Antisymmetric array A with omega(U, V) = U^T A V in the coordinate frame
/// (x1, y1, h1, x2, y2, h2).
using TwoForm = std::array<std::array<double, 6>, 6>;

/// The propagator 2-form on C_2(M). Zero outside U_n; throws InsideNError
/// for a pair in U_n whose heights differ by less than delta.
TwoForm omega(const MPoint& x, const MPoint& y, const PropagatorParams& p);

/// True iff (x, y) lies in the removed neighborhood N.
bool inside_n(const MPoint& x, const MPoint& y, const PropagatorParams& p);

}  // namespace vassiliev
