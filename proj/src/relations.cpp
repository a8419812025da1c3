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

#include "vassiliev/relations.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "vassiliev/collapse.hpp"
#include "vassiliev/enumerate.hpp"
#include "vassiliev/stu.hpp"

namespace vassiliev {
namespace {

bool in_box(Winding w, int r) { return std::abs(w.p) <= r && std::abs(w.q) <= r; }

// Row of a chord sum over the generators; false if a term is missing.
bool to_row(const RationalSum& s, const RelationBasis& b, SparseRow& row, std::string* missing) {
  row.clear();
  for (const auto& [key, term] : s.terms()) {
    auto it = b.index.find(key);
    if (it == b.index.end()) {
      if (missing) *missing = key;
      return false;
    }
    row[it->second] += term.coeff;
  }
  std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
  return true;
}

void insert_relation(RelationBasis& b, SparseRow row) {
  row = b.reduce(std::move(row));
  if (row.empty()) return;
  const Rational lead = row.begin()->second;
  for (auto& [c, v] : row) v /= lead;
  const int pivot = row.begin()->first;
  b.pivots.emplace(pivot, std::move(row));
}

WindingWindow inner_window(const RelationBasis& b, int radius) {
  if (radius < 0 || radius >= b.window.radius)
    throw std::invalid_argument("audit radius must be below the basis window radius");
  WindingWindow w = b.window;
  w.radius = radius;
  return w;
}

}  // namespace

bool WindingWindow::contains(const SurfaceDiagram& d) const {
  if (d.core_class != core_classes) return false;
  for (Winding w : d.edge_winding)
    if (!w.is_zero()) return false;
  for (const auto& arcs : d.arc_winding)
    for (Winding w : arcs)
      if (!in_box(w, radius)) return false;
  return true;
}

std::vector<SurfaceDiagram> window_diagrams(int n, int t, const WindingWindow& w) {
  std::map<std::string, SurfaceDiagram> found;
  const int side = 2 * w.radius + 1;
  const std::int64_t cells = static_cast<std::int64_t>(side) * side;
  for (const auto& sk : enumerate(n, w.core_count())) {
    if (sk.internal_count() != t) continue;
    const auto tree = gauge_tree_arcs(sk);
    // Free arcs per core; the last one on each core is determined by the class.
    std::vector<std::pair<int, int>> chosen;
    std::vector<std::pair<int, int>> determined;
    for (int c = 0; c < sk.core_count(); ++c) {
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < static_cast<int>(sk.cores[c].size()); ++i)
        if (!std::binary_search(tree.begin(), tree.end(), std::make_pair(c, i))) free.emplace_back(c, i);
      if (free.empty()) {
        if (!w.core_classes[c].is_zero()) goto next_skeleton;
        continue;
      }
      determined.push_back(free.back());
      free.pop_back();
      chosen.insert(chosen.end(), free.begin(), free.end());
    }
    {
      std::vector<std::int64_t> digit(chosen.size(), 0);
      while (true) {
        SurfaceDiagram d = SurfaceDiagram::trivial(sk);
        d.core_class = w.core_classes;
        for (std::size_t k = 0; k < chosen.size(); ++k)
          d.arc_winding[chosen[k].first][chosen[k].second] =
              Winding{digit[k] / side - w.radius, digit[k] % side - w.radius};
        bool ok = true;
        for (auto [c, i] : determined) {
          Winding rest;
          for (Winding a : d.arc_winding[c]) rest += a;
          d.arc_winding[c][i] = w.core_classes[c] - rest;
          ok = ok && in_box(d.arc_winding[c][i], w.radius);
        }
        if (ok) {
          auto canon = canonicalize(d);
          if (w.contains(canon.form)) found.try_emplace(canon.key, std::move(canon.form));
        }
        std::size_t k = 0;
        while (k < digit.size() && ++digit[k] == cells) digit[k++] = 0;
        if (k == digit.size()) break;
      }
    }
  next_skeleton:;
  }
  std::vector<SurfaceDiagram> out;
  for (auto& [key, d] : found) out.push_back(std::move(d));
  return out;
}

SparseRow RelationBasis::reduce(SparseRow row) const {
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots.find(it->first);
    if (p == pivots.end()) {
      ++it;
      continue;
    }
    const int col = it->first;
    const Rational f = it->second;
    for (const auto& [c, v] : p->second) row[c] -= f * v;
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    it = row.upper_bound(col);
  }
  return row;
}

RelationBasis relation_basis(int n, const WindingWindow& w) {
  RelationBasis b;
  b.degree = n;
  b.window = w;
  b.generators = window_diagrams(n, 0, w);
  for (int i = 0; i < static_cast<int>(b.generators.size()); ++i)
    b.index.emplace(to_text(b.generators[i]), i);
  if (n >= 2) {
    for (const auto& y : window_diagrams(n, 1, w)) {
      const auto ls = legs(y.skeleton);
      std::vector<RationalSum> s;
      for (int leg : ls) s.push_back(stu_expand(y, leg));
      for (std::size_t j = 1; j < s.size(); ++j) {
        SparseRow row;
        std::string missing;
        if (!to_row(s[0] - s[j], b, row, &missing)) {
          b.dropped.push_back(to_text(y) + " legs " + std::to_string(ls[0]) + "," +
                              std::to_string(ls[j]) + ": " + missing);
          continue;
        }
        if (row.empty()) continue;
        b.relations.push_back(row);
        insert_relation(b, std::move(row));
      }
    }
  }
  for (int i = 0; i < static_cast<int>(b.generators.size()); ++i)
    if (!b.pivots.count(i)) b.basis.push_back(i);
  return b;
}

std::vector<Rational> normal_form(const RationalSum& s, const RelationBasis& b) {
  const RationalSum chords = reduce_to_chords(s);
  SparseRow row;
  for (const auto& [key, term] : chords.terms()) {
    auto it = b.index.find(key);
    if (it == b.index.end())
      throw WindowTooSmallError("normal_form: " + key + " is outside the window");
    row[it->second] += term.coeff;
  }
  std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
  row = b.reduce(std::move(row));
  std::vector<Rational> out;
  out.reserve(b.basis.size());
  for (int g : b.basis) {
    auto it = row.find(g);
    out.push_back(it == row.end() ? Rational(0) : it->second);
  }
  return out;
}

RelationAudit verify_as(const RelationBasis& b, int source_radius) {
  const WindingWindow source = inner_window(b, source_radius);
  RelationAudit audit;
  for (int t = 1; t <= 2 * b.degree; ++t) {
    for (const auto& d : window_diagrams(b.degree, t, source)) {
      for (int v = 0; v < d.skeleton.vertex_count(); ++v) {
        if (d.skeleton.is_external(v)) continue;
        SurfaceDiagram flipped = d;
        std::swap(flipped.skeleton.rotation[v][1], flipped.skeleton.rotation[v][2]);
        const auto sum = reduce_to_chords(d, {ExpansionOrder::kFirstLeg, 0}) +
                         reduce_to_chords(flipped, {ExpansionOrder::kLastLeg, 0});
        SparseRow row;
        if (!to_row(sum, b, row, nullptr)) continue;
        ++audit.checked;
        if (!b.reduce(std::move(row)).empty()) {
          ++audit.failed;
          audit.failures.push_back(to_text(d) + " at vertex " + std::to_string(v));
        }
      }
    }
  }
  return audit;
}

RelationAudit verify_ihx(const RelationBasis& b, int source_radius) {
  const WindingWindow source = inner_window(b, source_radius);
  RelationAudit audit;
  for (int t = 2; t <= 2 * b.degree; ++t) {
    for (const auto& d : window_diagrams(b.degree, t, source)) {
      const auto& s = d.skeleton;
      for (int e = 0; e < s.edge_count(); ++e) {
        if (s.is_external(s.edges[e].tail) || s.is_external(s.edges[e].head)) continue;
        const auto col = collapse_edge(s, e);
        if (col.degeneracy != Degeneracy::kNone) continue;
        const auto exp = expansions(*col.diagram);
        if (exp.size() != 3) continue;
        RationalSum sum;
        for (int k = 0; k < 3; ++k) {
          SurfaceDiagram x = SurfaceDiagram::trivial(exp[k].first);
          x.arc_winding = d.arc_winding;
          x.core_class = d.core_class;
          sum += Rational(kIhxSigns[k]) * reduce_to_chords(x);
        }
        SparseRow row;
        if (!to_row(sum, b, row, nullptr)) continue;
        ++audit.checked;
        if (!b.reduce(std::move(row)).empty()) {
          ++audit.failed;
          audit.failures.push_back(to_text(d) + " edge " + std::to_string(e));
        }
      }
    }
  }
  return audit;
}

}  // namespace vassiliev
