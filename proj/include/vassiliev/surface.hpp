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

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vassiliev/diagram.hpp"

namespace vassiliev {

/// An element of H_1(T^2) = Z^2.
struct Winding {
  std::int64_t p = 0;
  std::int64_t q = 0;

  bool is_zero() const { return p == 0 && q == 0; }
  Winding operator-() const { return {-p, -q}; }
  Winding& operator+=(Winding o) {
    p += o.p;
    q += o.q;
    return *this;
  }
  friend Winding operator+(Winding a, Winding b) { return a += b; }
  friend Winding operator-(Winding a, Winding b) { return a += -b; }
  friend auto operator<=>(const Winding&, const Winding&) = default;
};

std::string to_string(Winding w);

class NonContractibleGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A diagram mapped into T^2 x I up to homotopy.
///
/// Each oriented element of the skeleton (graph edge tail -> head, core arc
/// from position i to position i+1) carries the integer translation between
/// the lifts of its endpoints and the lift of its image. Changing the lift
/// of a vertex by z adds z to elements entering it and subtracts z from
/// elements leaving it (the gauge action).
struct SurfaceDiagram {
  AbstractDiagram skeleton;
  std::vector<Winding> edge_winding;
  std::vector<std::vector<Winding>> arc_winding;  // arc_winding[c][i]: cores[c][i] -> next
  std::vector<Winding> core_class;

  static SurfaceDiagram trivial(AbstractDiagram skeleton);

  int degree() const { return vassiliev::degree(skeleton); }
  friend bool operator==(const SurfaceDiagram&, const SurfaceDiagram&) = default;
};

/// Structural checks: sizes, arc sums equal core classes, graph cycles have
/// zero winding. Returns the list of violations.
std::vector<std::string> validate(const SurfaceDiagram& d);

/// Spanning-forest gauge: graph edges zero (possible iff the graph is
/// contractible), then core arcs extending the forest zero. Idempotent.
/// Throws NonContractibleGraphError.
SurfaceDiagram gauge_fix(const SurfaceDiagram& d);

/// Core arcs that gauge_fix sets to zero, as sorted (core, position).
std::vector<std::pair<int, int>> gauge_tree_arcs(const AbstractDiagram& skeleton);

/// Applies a vertex relabeling to skeleton and windings (result gauge-fixed).
/// `vertex_flips` as in relabel().
SurfaceDiagram relabel(const SurfaceDiagram& d, const std::vector<int>& label, int* vertex_flips);

struct CanonicalSurface {
  SurfaceDiagram form;  // canonical skeleton, ascending cyclic orders, gauge-fixed
  int sign = 1;         // d = sign * form, 0 when d = -d
  std::string key;      // to_text(form)
};

CanonicalSurface canonicalize(const SurfaceDiagram& d);

/// True iff a skeleton isomorphism matches the gauge-fixed windings
/// (cyclic orientations ignored).
bool diagrams_equal(const SurfaceDiagram& a, const SurfaceDiagram& b);

/// Diagram notation with `@(p,q)` annotations: arcs after their starting
/// vertex, core classes after each core, windings after each edge.
/// Example: `C(0@(0,0) 1@(1,0))@(1,0) E(0>1@(0,0))`.
std::string to_text(const SurfaceDiagram& d);
SurfaceDiagram parse_surface_diagram(std::string_view text);

}  // namespace vassiliev
