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

#include <cstdint>
#include <vector>

#include "vassiliev/diagram.hpp"

namespace vassiliev {

/// Vertex relabelings of a cored multigraph that are canonical up to
/// automorphism. Cores are ordered and oriented; each core may rotate.
///
/// `labelings` holds every relabeling (old vertex -> new label) that
/// attains the minimal code; consecutive entries differ by an automorphism,
/// so `labelings.size()` is the order of the vertex automorphism group.
struct CanonicalLabelings {
  std::vector<int> code;
  std::vector<std::vector<int>> labelings;
};

CanonicalLabelings canonical_labelings(const std::vector<std::vector<int>>& cores,
                                       const std::vector<Edge>& edges, int vertex_count);

/// Edge index permutation induced by a vertex map. Parallel edges are
/// matched in index order.
std::vector<int> induced_edge_map(const std::vector<Edge>& edges, const std::vector<int>& vertex_map);

/// Number of internal vertices whose cyclic order is reversed by the vertex
/// map `perm`, viewed as a map from `from` to `to` (same vertex count).
int flip_count(const AbstractDiagram& from, const AbstractDiagram& to, const std::vector<int>& perm);

/// Applies a relabeling. The result has edges sorted by endpoint labels and
/// oriented low -> high, and internal cyclic orders written starting from
/// the smallest edge index. `vertex_flips` receives the number of internal
/// vertices whose transported cyclic order is descending; `edge_map`, when
/// given, receives old edge index -> new edge index.
AbstractDiagram relabel(const AbstractDiagram& d, const std::vector<int>& label, int* vertex_flips,
                        std::vector<int>* edge_map = nullptr);

struct CanonicalDiagram {
  AbstractDiagram form;  // ascending cyclic orders at every internal vertex
  int sign = 1;          // d = sign * form; 0 when d = -d by an odd automorphism
};

CanonicalDiagram canonicalize(const AbstractDiagram& d);

/// Unoriented isomorphism (cyclic orders ignored).
bool isomorphic(const AbstractDiagram& a, const AbstractDiagram& b);

/// All vertex automorphisms as maps old -> new.
std::vector<std::vector<int>> automorphisms(const AbstractDiagram& d);

struct AutomorphismOrders {
  std::int64_t all = 0;
  std::int64_t even = 0;  // even number of reversed cyclic orders
};

AutomorphismOrders automorphism_orders(const AbstractDiagram& d);

}  // namespace vassiliev
