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

#include "vassiliev/collapse.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace vassiliev {
namespace {

// Cyclic order at internal vertex v rotated so that edge e comes first.
std::array<int, 3> rotation_from(const AbstractDiagram& d, int v, int e) {
  auto r = d.rotation[v];
  while (r[0] != e) std::rotate(r.begin(), r.begin() + 1, r.end());
  return r;
}

int permutation_parity(std::vector<int> p) {
  int parity = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      parity ^= 1;
    }
  return parity;
}

// 0 if `mapped` is a rotation of `target`, 1 if a reflection, otherwise
// the parity of the slot permutation.
int hub_reversal(const std::array<int, 4>& mapped, const std::array<int, 4>& target) {
  for (int s = 0; s < 4; ++s) {
    bool rot = true, ref = true;
    for (int k = 0; k < 4; ++k) {
      rot = rot && mapped[k] == target[(s + k) % 4];
      ref = ref && mapped[k] == target[(s + 4 - k) % 4];
    }
    if (rot) return 0;
    if (ref) return 1;
  }
  std::vector<int> perm(4);
  for (int k = 0; k < 4; ++k)
    perm[k] = static_cast<int>(std::find(target.begin(), target.end(), mapped[k]) - target.begin());
  return permutation_parity(perm);
}

AbstractDiagram as_plain(const CollapsedDiagram& c) {
  AbstractDiagram d;
  d.cores = c.cores;
  d.edges = c.edges;
  d.rotation = c.rotation;
  return d;
}

}  // namespace

bool CollapsedDiagram::hub_on_core() const {
  for (const auto& w : cores)
    if (std::find(w.begin(), w.end(), hub) != w.end()) return true;
  return false;
}

CollapseResult collapse_edge(const AbstractDiagram& d, int e) {
  if (e < 0 || e >= d.edge_count()) throw DiagramError("collapse_edge: invalid edge");
  const int a0 = d.edges[e].tail, b0 = d.edges[e].head;
  const bool ext_a = d.is_external(a0), ext_b = d.is_external(b0);
  CollapseResult out;
  if (ext_a && ext_b) {
    out.degeneracy = Degeneracy::kChord;
    return out;
  }
  // Keep the external endpoint when there is one.
  const int keep = ext_b ? b0 : a0;
  const int gone = keep == a0 ? b0 : a0;

  std::set<int> keep_nb, gone_nb;
  for (int i = 0; i < d.edge_count(); ++i) {
    if (i == e) continue;
    const auto& f = d.edges[i];
    if (f.touches(keep) && f.touches(gone)) {
      out.degeneracy = Degeneracy::kDoubleEdge;
      return out;
    }
    if (f.touches(keep)) keep_nb.insert(f.other(keep));
    if (f.touches(gone)) gone_nb.insert(f.other(gone));
  }
  for (int w : keep_nb)
    if (gone_nb.count(w)) {
      out.degeneracy = Degeneracy::kDoubleEdge;
      return out;
    }

  const int n = d.vertex_count();
  std::vector<int> vmap(n);
  for (int v = 0, next = 0; v < n; ++v) vmap[v] = v == gone ? -1 : next++;
  vmap[gone] = vmap[keep];
  std::vector<int> emap(d.edge_count(), -1);
  for (int i = 0, next = 0; i < d.edge_count(); ++i)
    if (i != e) emap[i] = next++;

  CollapsedDiagram c;
  c.source_edge = e;
  c.hub = vmap[keep];
  for (const auto& w : d.cores) {
    std::vector<int> nw;
    for (int v : w) nw.push_back(vmap[v]);
    c.cores.push_back(std::move(nw));
  }
  for (int i = 0; i < d.edge_count(); ++i)
    if (i != e) c.edges.push_back({vmap[d.edges[i].tail], vmap[d.edges[i].head]});
  c.rotation.assign(n - 1, kNoRotation);
  for (int v = 0; v < n; ++v) {
    if (v == keep || v == gone || d.is_external(v)) continue;
    for (int k = 0; k < 3; ++k) c.rotation[vmap[v]][k] = emap[d.rotation[v][k]];
  }
  // Splice the cyclic orders along the contracted edge.
  const auto g = rotation_from(d, gone, e);
  if (d.is_external(keep)) {
    // Planar picture at a core point: outgoing arc, leg, incoming arc.
    c.hub_order = {kArcOut, emap[g[1]], emap[g[2]], kArcIn};
  } else {
    const auto k = rotation_from(d, keep, e);
    c.hub_order = {emap[k[1]], emap[k[2]], emap[g[1]], emap[g[2]]};
  }
  out.diagram = std::move(c);
  return out;
}

std::vector<std::pair<AbstractDiagram, int>> expansions(const CollapsedDiagram& c) {
  std::vector<std::pair<AbstractDiagram, int>> out;
  const int n = c.vertex_count();
  const auto& h = c.hub_order;

  auto build = [&](int keep_a, int keep_b, int move_a, int move_b) {
    // Hub keeps slots (keep_a, keep_b); a new vertex takes (move_a, move_b).
    AbstractDiagram d;
    d.cores = c.cores;
    d.edges = c.edges;
    d.rotation = c.rotation;
    d.rotation.push_back(kNoRotation);
    const int fresh = n;
    for (int slot : {move_a, move_b}) {
      auto& f = d.edges[slot];
      if (f.tail == c.hub) f.tail = fresh;
      else f.head = fresh;
    }
    const int new_edge = d.edge_count();
    d.edges.push_back({c.hub, fresh});
    d.rotation[fresh] = {new_edge, move_a, move_b};
    if (keep_a >= 0) d.rotation[c.hub] = {new_edge, keep_a, keep_b};
    if (is_valid(d)) out.emplace_back(std::move(d), new_edge);
  };

  if (c.hub_on_core()) {
    build(-1, -1, h[1], h[2]);
    return out;
  }
  // A parallel pair at the hub cannot be told apart by slot; edges are
  // distinct indices so all three pairings are still listed.
  build(h[0], h[1], h[2], h[3]);
  build(h[1], h[2], h[3], h[0]);
  build(h[0], h[2], h[1], h[3]);
  return out;
}

bool isomorphic(const CollapsedDiagram& a, const CollapsedDiagram& b) {
  if (a.vertex_count() != b.vertex_count() || a.edges.size() != b.edges.size()) return false;
  return canonical_labelings(a.cores, a.edges, a.vertex_count()).code ==
         canonical_labelings(b.cores, b.edges, b.vertex_count()).code;
}

AutomorphismOrders automorphism_orders(const CollapsedDiagram& c) {
  const AbstractDiagram plain = as_plain(c);
  AutomorphismOrders out;
  for (const auto& sigma : automorphisms(plain)) {
    ++out.all;
    // Trivalent flips, skipping the hub.
    AbstractDiagram masked = plain;
    masked.rotation[c.hub] = kNoRotation;
    int flips = flip_count(masked, masked, sigma);
    const auto emap = induced_edge_map(c.edges, sigma);
    std::array<int, 4> mapped{};
    for (int k = 0; k < 4; ++k) mapped[k] = c.hub_order[k] < 0 ? c.hub_order[k] : emap[c.hub_order[k]];
    flips += hub_reversal(mapped, c.hub_order);
    if (flips % 2 == 0) ++out.even;
  }
  return out;
}

MultiplicityIdentity multiplicity_identity(const AbstractDiagram& d, int e) {
  MultiplicityIdentity id;
  auto base = collapse_edge(d, e);
  if (!base.diagram) throw DiagramError("multiplicity: degenerate collapse");
  const auto& c = *base.diagram;
  for (int f = 0; f < d.edge_count(); ++f) {
    auto other = collapse_edge(d, f);
    if (other.diagram && isomorphic(*other.diagram, c)) ++id.direct;
  }
  for (const auto& [k, edge] : expansions(c))
    if (isomorphic(k, d)) ++id.expansions_isomorphic;
  id.aut = automorphism_orders(d);
  id.aut_collapsed = automorphism_orders(c);
  return id;
}

int collapse_multiplicity(const AbstractDiagram& d, int e, bool verify) {
  const auto id = multiplicity_identity(d, e);
  if (verify && !id.holds())
    throw std::logic_error("collapse multiplicity identity fails for " + to_text(d) + " edge " +
                           std::to_string(e));
  return id.direct;
}

std::string to_string(FaceLabel f) {
  switch (f) {
    case FaceLabel::kPrincipal: return "principal";
    case FaceLabel::kHidden: return "hidden";
    case FaceLabel::kAnomalous: return "anomalous";
    case FaceLabel::kDisconnected: return "disconnected";
    case FaceLabel::kBoundary: return "boundary";
  }
  return "?";
}

FaceLabel classify_face(const AbstractDiagram& d, const std::vector<int>& T) {
  std::vector<int> set(T);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.size() < 2) throw DiagramError("classify_face: subset too small");
  auto in_t = [&](int v) { return std::binary_search(set.begin(), set.end(), v); };

  // Connectivity of the subgraph induced on T.
  std::vector<int> parent(d.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int inner_edges = 0;
  for (const auto& e : d.edges)
    if (in_t(e.tail) && in_t(e.head)) {
      ++inner_edges;
      parent[find(e.tail)] = find(e.head);
    }
  const int root = find(set.front());
  for (int v : set)
    if (find(v) != root) return FaceLabel::kDisconnected;

  for (const auto& comp : graph_components(d))
    if (comp == set) return FaceLabel::kAnomalous;
  if (set.size() == 2 && inner_edges >= 1) return FaceLabel::kPrincipal;
  return FaceLabel::kHidden;
}

std::vector<FrameSlot> orientation_frame(const AbstractDiagram& d, const std::vector<int>& edge_order) {
  std::vector<int> order(edge_order);
  if (order.empty()) {
    order.resize(d.edge_count());
    std::iota(order.begin(), order.end(), 0);
  }
  auto slot = [&](int v, int e) {
    if (d.is_external(v)) return 0;
    const auto& r = d.rotation[v];
    return static_cast<int>(std::find(r.begin(), r.end(), e) - r.begin());
  };
  std::vector<FrameSlot> frame;
  frame.reserve(2 * order.size());
  for (int e : order) {
    const auto& edge = d.edges[e];
    frame.push_back({edge.head, slot(edge.head, e)});
    frame.push_back({edge.tail, slot(edge.tail, e)});
  }
  return frame;
}

int frame_parity(const AbstractDiagram& d, const std::vector<int>& edge_order,
                 const std::vector<int>& vertex_order) {
  std::vector<int> vorder(vertex_order);
  if (vorder.empty()) {
    vorder.resize(d.vertex_count());
    std::iota(vorder.begin(), vorder.end(), 0);
  }
  std::vector<int> offset(d.vertex_count(), 0);
  int next = 0;
  for (int v : vorder) {
    offset[v] = next;
    next += d.is_external(v) ? 1 : 3;
  }
  const auto frame = orientation_frame(d, edge_order);
  std::vector<int> perm;
  perm.reserve(frame.size());
  for (const auto& s : frame) perm.push_back(offset[s.vertex] + s.slot);
  if (static_cast<int>(perm.size()) != next) throw DiagramError("frame_parity: dimension mismatch");
  return permutation_parity(perm) ? -1 : 1;
}

OrientationSigns orientation_sign(const AbstractDiagram& d, const ConventionChange& change) {
  AbstractDiagram changed = d;
  for (int e : change.flipped_edges) std::swap(changed.edges[e].tail, changed.edges[e].head);
  for (int v : change.flipped_vertices) std::swap(changed.rotation[v][1], changed.rotation[v][2]);
  OrientationSigns s;
  s.element = frame_parity(changed, change.edge_order) * frame_parity(d);
  // The form factor of each flipped edge is odd under the swap; reordering
  // vertices permutes coordinates and reorients the domain by the same sign.
  const int form = change.flipped_edges.size() % 2 ? -1 : 1;
  const int coords = frame_parity(changed, change.edge_order, change.vertex_order) *
                     frame_parity(changed, change.edge_order);
  s.integral = s.element * form * coords * coords;
  return s;
}

}  // namespace vassiliev
