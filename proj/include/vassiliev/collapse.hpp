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
#include <string>
#include <utility>
#include <vector>

#include "vassiliev/canon.hpp"
#include "vassiliev/diagram.hpp"

namespace vassiliev {

// Hub slots that stand for the core arcs at a hub lying on a core.
inline constexpr int kArcOut = -1;
inline constexpr int kArcIn = -2;

/// A diagram with exactly one 4-valent vertex (the hub), obtained by
/// contracting one edge. Valence counts core incidences, so a hub on a core
/// carries two graph edges. `hub_order` is the cyclic order of the hub's
/// four slots (edge indices, or kArcOut/kArcIn for a hub on a core).
struct CollapsedDiagram {
  std::vector<std::vector<int>> cores;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> rotation;  // trivalent internals only
  int hub = -1;
  std::array<int, 4> hub_order{};
  int source_edge = -1;

  int vertex_count() const { return static_cast<int>(rotation.size()); }
  bool hub_on_core() const;
};

enum class Degeneracy { kNone, kChord, kDoubleEdge };

struct CollapseResult {
  Degeneracy degeneracy = Degeneracy::kNone;
  std::optional<CollapsedDiagram> diagram;
};

/// Contracts graph edge `e`. Throws DiagramError for an index outside the
/// graph part.
CollapseResult collapse_edge(const AbstractDiagram& d, int e);

/// Every way of resolving the hub into two trivalent-compatible vertices
/// joined by a new graph edge; at most three. The returned diagrams are
/// valid and the edge index names the new edge.
std::vector<std::pair<AbstractDiagram, int>> expansions(const CollapsedDiagram& c);

/// Unoriented isomorphism of collapsed diagrams.
bool isomorphic(const CollapsedDiagram& a, const CollapsedDiagram& b);

/// Vertex automorphism counts of a collapsed diagram. An automorphism is
/// even when the number of reversed trivalent cyclic orders plus the hub
/// reversal (a reflection of the hub's cyclic slot order) is even.
AutomorphismOrders automorphism_orders(const CollapsedDiagram& c);

/// #{f : collapse(d,f) isomorphic to collapse(d,e)}, counted directly.
/// With `verify`, also evaluates #{i} |Aut+ d| / |Aut+ collapse(d,e)| and
/// throws std::logic_error on disagreement.
int collapse_multiplicity(const AbstractDiagram& d, int e, bool verify = false);

/// Both sides of the collapse counting identity. When neither the diagram
/// nor its collapse has an orientation-reversing automorphism the identity
/// is #{f} = #{i} |Aut+ d| / |Aut+ collapse|. Otherwise the face integral
/// vanishes and the identity is checked with the full groups.
struct MultiplicityIdentity {
  int direct = 0;
  int expansions_isomorphic = 0;  // #{i}
  AutomorphismOrders aut;
  AutomorphismOrders aut_collapsed;

  bool orientation_reversing() const {
    return aut.all != aut.even || aut_collapsed.all != aut_collapsed.even;
  }
  bool holds() const {
    const std::int64_t k = orientation_reversing() ? aut.all : aut.even;
    const std::int64_t c = orientation_reversing() ? aut_collapsed.all : aut_collapsed.even;
    return static_cast<std::int64_t>(direct) * c == static_cast<std::int64_t>(expansions_isomorphic) * k;
  }
};

MultiplicityIdentity multiplicity_identity(const AbstractDiagram& d, int e);

enum class FaceLabel { kPrincipal, kHidden, kAnomalous, kDisconnected, kBoundary };

std::string to_string(FaceLabel f);

/// Classifies the collision of the vertex set T (vertex ids of d).
/// Throws DiagramError when |T| < 2.
FaceLabel classify_face(const AbstractDiagram& d, const std::vector<int>& T);

/// One basis vector of the tangent space at a configuration: vertex and
/// slot (0 for external vertices, 0..2 for internal ones).
struct FrameSlot {
  int vertex = -1;
  int slot = 0;
  friend bool operator==(const FrameSlot&, const FrameSlot&) = default;
};

/// The oriented frame wedge_e X_head^{pos} ^ X_tail^{pos}, edges taken in
/// `edge_order` (identity when empty).
std::vector<FrameSlot> orientation_frame(const AbstractDiagram& d, const std::vector<int>& edge_order = {});

/// Sign of the frame against the coordinate order that lists vertices in
/// `vertex_order` (identity when empty), slots ascending.
int frame_parity(const AbstractDiagram& d, const std::vector<int>& edge_order = {},
                 const std::vector<int>& vertex_order = {});

struct ConventionChange {
  std::vector<int> flipped_edges;
  std::vector<int> flipped_vertices;  // internal vertices whose cyclic order is reversed
  std::vector<int> edge_order;        // o_e, empty for identity
  std::vector<int> vertex_order;      // o_u and o_t combined, empty for identity
};

/// Relative sign of the orientation element under `change`, and the sign
/// the configuration-space integral picks up once the coordinate
/// reordering is compensated by reorienting the domain.
struct OrientationSigns {
  int element = 1;
  int integral = 1;
};

OrientationSigns orientation_sign(const AbstractDiagram& d, const ConventionChange& change);

}  // namespace vassiliev
