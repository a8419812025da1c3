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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vassiliev/diagram.hpp"
#include "vassiliev/geometry.hpp"
#include "vassiliev/link.hpp"
#include "vassiliev/surface.hpp"

namespace vassiliev {

class NotAnomalousError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PunctureOnLinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HomotopyBlockedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A unit tangent direction at a point of M.
struct SphereBundlePoint {
  MPoint base;
  Vec3 v{1, 0, 0};
};

/// Orthonormal (f1, f2) with (v, f1, f2) positively oriented.
std::array<Vec3, 2> sphere_frame(const Vec3& v);

/// Coordinates on T S(TM): three base directions, then the rotations of v
/// towards f1 and f2. Antisymmetric.
using TwoForm5 = std::array<std::array<double, 5>, 5>;

/// The propagator restricted to the collision face: the direction d is
/// sent by central projection to the cap |dh| = delta of the excluded
/// neighbourhood and the Thom form is pulled back there. Evaluated on
/// tangent displacements a, b of d. Zero outside a cone of half-angle
/// about delta around the vertical.
double face_propagator(const Vec3& d, const Vec3& a, const Vec3& b, const PropagatorParams& params);

/// 3(u + t + 1) - 2|T_u| - 5 for the diagram's u, t.
int fiber_dimension(const AbstractDiagram& ka, const std::vector<int>& T);

/// Collision configuration of the vertices of T in the blow-up: univalent
/// vertices on the line through 0 spanned by v, internal vertices free,
/// translation along v and scale fixed by the parameter sphere.
struct AnomalyFiberPoint {
  std::vector<double> coords;         // point of the unit sphere in the parameter hyperplane
  std::vector<Vec3> position;         // per vertex of T, in T order
  int parameter_count() const { return static_cast<int>(coords.size()) - 2; }
};

/// Builds the fiber point over v for the given parameter coordinates
/// (|T_u| along-line values followed by three values per internal vertex,
/// in the frame (v, f1, f2)). Coordinates are projected and normalized.
AnomalyFiberPoint fiber_point(const AbstractDiagram& ka, const std::vector<int>& T, const Vec3& v,
                              std::vector<double> coords);

struct AnomalyOptions {
  std::int64_t budget = 4000;  // fiber samples per evaluation
  std::uint64_t seed = 1;
  int shards = 16;
};

struct AnomalyValue {
  SurfaceDiagram diagram;
  TwoForm5 value{};
  TwoForm5 std_error{};
  double magnitude = 0;  // integral of |terms|, the scale for relative tolerances
};

/// Fiber integral over B_T(v). T must be an anomalous face of ka.
AnomalyValue omega_T(const SphereBundlePoint& v, const AbstractDiagram& ka, const std::vector<int>& T,
                     const PropagatorParams& params, const AnomalyOptions& opt);

/// Sum over all degree-n diagrams on l cores and all their anomalous
/// faces, keyed by diagram class.
std::map<std::string, AnomalyValue> omega_n(const SphereBundlePoint& v, int n, int l, const PropagatorParams& params,
                                            const AnomalyOptions& opt);

/// Finite-difference exterior derivative of omega_n over the boundary of a
/// small 3-cell spanned by coordinate directions (i, j, k) of T S(TM).
struct ClosednessResult {
  double flux = 0;       // sum over the cell boundary
  double std_error = 0;  // common random numbers across faces
  double magnitude = 0;
};
ClosednessResult closedness(const SphereBundlePoint& v, int n, int l, std::array<int, 3> directions, double h,
                            const PropagatorParams& params, const AnomalyOptions& opt);

struct CorrectionOptions {
  std::array<double, 2> puncture{0.0, 0.0};
  std::int64_t budget = 20000;  // trace samples per component
  AnomalyOptions fiber;
  int track_attempts = 16;
  double framing_clearance = 0.05;  // radians
};

struct CorrectionTerm {
  SurfaceDiagram diagram;
  double value = 0;
  double std_error = 0;
};

struct CorrectionResult {
  std::map<std::string, CorrectionTerm> terms;
  std::string lift_convention = "constant-direction";
  std::vector<double> track_angle;  // chosen end direction per component

  nlohmann::json to_json() const;
};

/// The integral over L of a primitive of Omega_n on S'(TM), through Stokes
/// over a homotopy from the tangential lift to constant-direction lifts of
/// closed geodesics, avoiding the framing directions and the fiber over
/// the puncture.
CorrectionResult correction(const Link& link, int n, const PropagatorParams& params, const CorrectionOptions& opt);

}  // namespace vassiliev
