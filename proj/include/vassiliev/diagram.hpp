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
#include <string_view>
#include <vector>

namespace vassiliev {

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oriented edge of the graph part. Orientation only matters for sign
/// bookkeeping; the underlying graph is undirected.
struct Edge {
  int tail = -1;
  int head = -1;

  int other(int v) const { return v == tail ? head : tail; }
  bool touches(int v) const { return v == tail || v == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline constexpr std::array<int, 3> kNoRotation = {-1, -1, -1};

/// Abstract Feynman diagram: oriented core circles carrying external
/// vertices in cyclic order, plus a graph whose internal vertices are
/// trivalent with a cyclic order of incident edges.
///
/// Vertices are numbered 0..vertex_count()-1. A vertex is external iff it
/// appears on some core. For an internal vertex `rotation[v]` lists its
/// three incident edge indices in cyclic order; for external vertices it is
/// kNoRotation.
struct AbstractDiagram {
  std::vector<std::vector<int>> cores;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> rotation;

  int vertex_count() const { return static_cast<int>(rotation.size()); }
  int core_count() const { return static_cast<int>(cores.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int external_count() const;
  int internal_count() const { return vertex_count() - external_count(); }
  bool is_external(int v) const { return rotation[v][0] < 0; }
  bool is_chord_diagram() const { return internal_count() == 0; }

  /// Core index and position of external vertex v, or {-1,-1}.
  std::pair<int, int> core_position(int v) const;
  /// Edge indices incident to v in index order (each parallel edge once).
  std::vector<int> incident_edges(int v) const;

  friend bool operator==(const AbstractDiagram&, const AbstractDiagram&) = default;
};

/// Diagram with `core_count` empty circles.
AbstractDiagram empty_diagram(int core_count);

/// Builds a chord diagram from per-core cyclic words of chord labels; each
/// label must occur exactly twice overall. Edges are numbered by first
/// occurrence and oriented from first to second occurrence.
AbstractDiagram chord_diagram(const std::vector<std::vector<int>>& words);

std::vector<std::string> validate(const AbstractDiagram& d);
bool is_valid(const AbstractDiagram& d);

/// (u + t) / 2; requires a valid diagram.
int degree(const AbstractDiagram& d);

/// Connected components of the graph part (vertex sets, sorted). Vertices
/// with no incident edge form singleton components.
std::vector<std::vector<int>> graph_components(const AbstractDiagram& d);

/// Text notation, e.g. `C(0 1 2 3) E(0>2 1>3)` for the crossed two-chord
/// diagram, `C(0 1 2) E(0>3 1>3 2>3) R(3:0,1,2)` for the Y diagram.
std::string to_text(const AbstractDiagram& d);
AbstractDiagram parse_diagram(std::string_view text);

}  // namespace vassiliev
