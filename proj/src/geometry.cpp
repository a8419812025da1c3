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

#include "vassiliev/geometry.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vassiliev {

TorusPoint reduce(double x, double y) {
  x -= std::floor(x);
  y -= std::floor(y);
  if (x >= 1.0) x = 0.0;
  if (y >= 1.0) y = 0.0;
  return {x, y};
}

Vec2 displacement(TorusPoint a, TorusPoint b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  dx -= std::floor(dx + 0.5);
  dy -= std::floor(dy + 0.5);
  return {dx, dy};
}

double dist(TorusPoint a, TorusPoint b) {
  const Vec2 d = displacement(a, b);
  return std::hypot(d[0], d[1]);
}

std::string to_string(BumpProfile p) {
  return p == BumpProfile::kStandard ? "standard" : "sharp";
}

BumpProfile parse_bump_profile(const std::string& s) {
  if (s == "standard") return BumpProfile::kStandard;
  if (s == "sharp") return BumpProfile::kSharp;
  throw std::invalid_argument("unknown bump profile: " + s);
}

double bump(double s2, BumpProfile p) {
  if (s2 >= 1.0) return 0.0;
  const double u = 1.0 - s2;
  return p == BumpProfile::kStandard ? std::exp(-1.0 / u) : std::exp(-1.0 / (u * u));
}

double bump_mass(BumpProfile p) {
  static const double standard = [] {
    auto f = [](double s) { return bump(s * s, BumpProfile::kStandard) * s; };
    return 2 * std::numbers::pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
  }();
  static const double sharp = [] {
    auto f = [](double s) { return bump(s * s, BumpProfile::kSharp) * s; };
    return 2 * std::numbers::pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
  }();
  return p == BumpProfile::kStandard ? standard : sharp;
}

double PropagatorParams::thom_scale() const {
  const double r = r0();
  return 1.0 / (bump_mass(profile) * r * r);
}

void PropagatorParams::validate() const {
  if (n < 1) throw std::invalid_argument("propagator degree must be positive");
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
}

double thom_density(Vec2 v, const PropagatorParams& p) {
  const double r = p.r0();
  const double s2 = (v[0] * v[0] + v[1] * v[1]) / (r * r);
  return p.thom_scale() * bump(s2, p.profile);
}

TwoForm4 thom_form(Vec2 v, const PropagatorParams& p) {
  TwoForm4 a{};
  const double f = thom_density(v, p);
  a[2][3] = f;
  a[3][2] = -f;
  return a;
}

Vec2 geodesic_dir(const MPoint& x, const MPoint& y, const PropagatorParams& p) {
  const Vec2 g = displacement(x.base(), y.base());
  if (std::hypot(g[0], g[1]) >= p.r0()) throw OutsideUnError("geodesic_dir: points are not in U_n");
  return g;
}

bool inside_n(const MPoint& x, const MPoint& y, const PropagatorParams& p) {
  const Vec2 g = displacement(x.base(), y.base());
  return std::hypot(g[0], g[1]) < p.r0() && std::abs(x.h - y.h) < p.delta();
}

TwoForm omega(const MPoint& x, const MPoint& y, const PropagatorParams& p) {
  TwoForm a{};
  const Vec2 g = displacement(x.base(), y.base());
  if (std::hypot(g[0], g[1]) >= p.r0()) return a;
  if (std::abs(x.h - y.h) < p.delta()) throw InsideNError("omega: pair lies in N");
  const double f = (x.h > y.h ? 1.0 : -1.0) * thom_density(g, p);
  // dg1 ^ dg2 with dg1 = dx2 - dx1 and dg2 = dy2 - dy1.
  const std::array<double, 6> u{-1, 0, 0, 1, 0, 0};
  const std::array<double, 6> w{0, -1, 0, 0, 1, 0};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a[i][j] = f * (u[i] * w[j] - w[i] * u[j]);
  return a;
}

}  // namespace vassiliev
