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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vassiliev/formal_sum.hpp"
#include "vassiliev/geometry.hpp"
#include "vassiliev/surface.hpp"

namespace vassiliev {

class LinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonTransverseError : public LinkError {
 public:
  using LinkError::LinkError;
};

class TangentialCrossingError : public LinkError {
 public:
  using LinkError::LinkError;
};

using Vec3 = std::array<double, 3>;

/// c0 + sum_k cos[k-1] cos(2 pi k s) + sin[k-1] sin(2 pi k s).
struct TrigSeries {
  double c0 = 0;
  std::vector<double> cos;
  std::vector<double> sin;

  double value(double s) const;
  double derivative(double s) const;
  /// Upper bound for |second derivative|.
  double curvature_bound() const;
  friend bool operator==(const TrigSeries&, const TrigSeries&) = default;
};

/// amplitude * beta((s - center) / halfwidth), beta(x) = exp(1 - 1/(1 - x^2))
/// on |x| < 1, periodic in s.
struct HeightBump {
  double center = 0;
  double halfwidth = 0.02;
  double amplitude = 0;

  double value(double s) const;
  double derivative(double s) const;
  friend bool operator==(const HeightBump&, const HeightBump&) = default;
};

/// Closed curve s -> (core_class.p s + x(s), core_class.q s + y(s), h(s))
/// in R^2 x I, read mod Z^2.
struct Component {
  Winding core_class;
  TrigSeries x, y, h;
  std::vector<HeightBump> bumps;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Two strands meeting at one point of M.
struct DoublePoint {
  int comp_a = 0;
  double s_a = 0;
  int comp_b = 0;
  double s_b = 0;
  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

/// Run defaults carried by a link file.
struct RunSettings {
  double epsilon = 0.15;
  int degree = 2;
  std::int64_t budget = 200000;
  std::uint64_t seed = 1;
  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct Link {
  std::string name;
  std::vector<Component> components;
  Vec3 framing{1, 0, 0};
  std::vector<DoublePoint> double_points;
  double ball_radius = 0.05;
  double push = 0.1;  // vertical push-off of a resolved strand
  std::optional<RunSettings> run;

  int size() const { return static_cast<int>(components.size()); }
  friend bool operator==(const Link&, const Link&) = default;
};

struct CurvePoint {
  MPoint point;     // reduced to the torus
  Vec2 lift;        // unreduced horizontal position
  Vec3 tangent;     // d/ds
};

CurvePoint eval(const Link& link, int comp, double s);

nlohmann::json to_json(const Link& link);
Link link_from_json(const nlohmann::json& j);
Link load_link(const std::string& path);
void save_link(const Link& link, const std::string& path);

struct ValidationOptions {
  int samples = 2048;
  double min_speed = 1e-6;
  double min_separation = 1e-4;
  double epsilon = 0.15;
  int degree = 2;
};

/// Immersion, heights in (0,1), embeddedness away from double points,
/// framing admissibility, double points coincide and ball separation.
std::vector<std::string> validate(const Link& link, const ValidationOptions& opt = {});

/// Smallest angle (radians) between the tangent and +-framing, with the
/// sampling bound subtracted; admissible when positive.
double framing_margin(const Link& link, int samples = 4096);

struct Resolution {
  std::vector<int> eta;
  int sign = 1;  // product of eta
  Link link;
};

/// All 2^k resolutions. Strand a of double point i is lifted by
/// push * eta_i * sign(det[Ta, Tb]) so the resolved crossing has sign eta_i.
/// Throws NonTransverseError for parallel strands, LinkError for k = 0.
std::vector<Resolution> resolutions(const Link& link);

struct Crossing {
  int comp_a = 0;
  double s_a = 0;
  int comp_b = 0;
  double s_b = 0;
  int sign = 0;           // sign(h_a - h_b) * sign(det[Ta, Tb])
  SurfaceDiagram chord;   // the one-chord diagram on all cores
};

/// Double points of the projection to T^2 with comp_a <= comp_b. Throws
/// TangentialCrossingError when projected tangents are parallel there.
std::vector<Crossing> crossing_data(const Link& link);

/// Sum over crossings between components i != j of (sign / 2) * chord.
RationalSum homotopy_linking(const Link& link, int i, int j);

/// The surface diagram class of a configuration: external vertex v sits
/// at parameter `param[v]` on the component of its core; internal vertex
/// v at the lifted point `interior[v]`. Edges follow short geodesics,
/// arcs follow the link forward. Result is gauge-fixed.
SurfaceDiagram realize(const Link& link, const AbstractDiagram& skeleton, const std::vector<double>& param,
                       const std::vector<Vec3>& interior = {});

}  // namespace vassiliev
