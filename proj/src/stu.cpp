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

#include "vassiliev/stu.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace vassiliev {
namespace {

SurfaceDiagram fixed_or_obstructed(const SurfaceDiagram& d, const char* which) {
  try {
    return gauge_fix(d);
  } catch (const NonContractibleGraphError&) {
    throw StuObstructionError(std::string("STU: ") + which + " has a non-contractible graph: " +
                              to_text(d));
  }
}

}  // namespace

std::vector<int> legs(const AbstractDiagram& d) {
  std::vector<int> out;
  for (int i = 0; i < d.edge_count(); ++i)
    if (d.is_external(d.edges[i].tail) != d.is_external(d.edges[i].head)) out.push_back(i);
  return out;
}

StuPair stu_resolve(const SurfaceDiagram& input, int leg) {
  const auto& s0 = input.skeleton;
  if (leg < 0 || leg >= s0.edge_count()) throw DiagramError("stu: invalid edge");
  const Edge le = s0.edges[leg];
  if (s0.is_external(le.tail) == s0.is_external(le.head))
    throw DiagramError("stu: edge " + std::to_string(leg) + " is not a leg");
  const SurfaceDiagram d = fixed_or_obstructed(input, "input");
  const auto& s = d.skeleton;
  const int w = s.is_external(le.tail) ? le.tail : le.head;
  const int v = le.other(w);

  auto r = s.rotation[v];
  while (r[0] != leg) std::rotate(r.begin(), r.begin() + 1, r.end());
  const int x = r[1];

  std::vector<int> emap(s.edge_count(), -1);
  for (int i = 0, next = 0; i < s.edge_count(); ++i)
    if (i != leg) emap[i] = next++;

  SurfaceDiagram base;
  auto& b = base.skeleton;
  b.rotation.assign(s.vertex_count(), kNoRotation);
  for (int u = 0; u < s.vertex_count(); ++u) {
    if (u == v || s.is_external(u)) continue;
    for (int k = 0; k < 3; ++k) b.rotation[u][k] = emap[s.rotation[u][k]];
  }
  for (int i = 0; i < s.edge_count(); ++i) {
    if (i == leg) continue;
    Edge e = s.edges[i];
    if (i == x) {
      if (e.tail == v) e.tail = w;
      else e.head = w;
    }
    b.edges.push_back(e);
    base.edge_winding.push_back(d.edge_winding[i]);
  }
  base.core_class = d.core_class;
  base.arc_winding = d.arc_winding;
  b.cores = s.cores;
  const auto [core, pos] = s.core_position(w);
  base.arc_winding[core].insert(base.arc_winding[core].begin() + pos, Winding{});

  StuPair out{base, base};
  auto& tw = out.t.skeleton.cores[core];
  tw.insert(tw.begin() + pos, v);  // y end, then x end at w
  auto& uw = out.u.skeleton.cores[core];
  uw.insert(uw.begin() + pos + 1, v);  // x end at w, then y end
  out.t = fixed_or_obstructed(out.t, "T term");
  out.u = fixed_or_obstructed(out.u, "U term");
  return out;
}

RationalSum stu_expand(const SurfaceDiagram& d, int leg) {
  auto [t, u] = stu_resolve(d, leg);
  RationalSum out(t);
  out.add(u, Rational(-1));
  return out;
}

RationalSum reduce_to_chords(const SurfaceDiagram& d, const ReduceOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<std::pair<SurfaceDiagram, Rational>> work{{d, Rational(1)}};
  RationalSum out;
  while (!work.empty()) {
    auto [cur, c] = std::move(work.back());
    work.pop_back();
    if (cur.skeleton.is_chord_diagram()) {
      out.add(cur, c);
      continue;
    }
    const auto candidates = legs(cur.skeleton);
    int leg = candidates.front();
    if (opt.order == ExpansionOrder::kLastLeg) leg = candidates.back();
    if (opt.order == ExpansionOrder::kRandomLeg)
      leg = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    auto [t, u] = stu_resolve(cur, leg);
    work.emplace_back(std::move(t), c);
    work.emplace_back(std::move(u), Rational(-c));
  }
  return out;
}

RationalSum reduce_to_chords(const RationalSum& s, const ReduceOptions& opt) {
  RationalSum out;
  for (const auto& [key, term] : s.terms()) {
    auto part = reduce_to_chords(term.diagram, opt);
    out += term.coeff * part;
  }
  return out;
}

}  // namespace vassiliev
