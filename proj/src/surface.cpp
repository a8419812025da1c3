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

#include "vassiliev/surface.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "vassiliev/canon.hpp"

namespace vassiliev {

std::string to_string(Winding w) {
  return "(" + std::to_string(w.p) + "," + std::to_string(w.q) + ")";
}

SurfaceDiagram SurfaceDiagram::trivial(AbstractDiagram skeleton) {
  SurfaceDiagram d;
  d.edge_winding.assign(skeleton.edge_count(), Winding{});
  for (const auto& c : skeleton.cores) d.arc_winding.emplace_back(c.size(), Winding{});
  d.core_class.assign(skeleton.core_count(), Winding{});
  d.skeleton = std::move(skeleton);
  return d;
}

namespace {

bool shapes_match(const SurfaceDiagram& d) {
  if (static_cast<int>(d.edge_winding.size()) != d.skeleton.edge_count()) return false;
  if (static_cast<int>(d.arc_winding.size()) != d.skeleton.core_count()) return false;
  if (static_cast<int>(d.core_class.size()) != d.skeleton.core_count()) return false;
  for (int c = 0; c < d.skeleton.core_count(); ++c)
    if (d.arc_winding[c].size() != d.skeleton.cores[c].size()) return false;
  return true;
}

// Vertex potentials that zero a spanning forest of the graph part, then a
// spanning forest of the component graph built from core arcs. Returns
// false when some graph edge cannot be zeroed.
bool forest_potential(const SurfaceDiagram& d, std::vector<Winding>& phi,
                      std::vector<std::pair<int, int>>* tree_arcs = nullptr) {
  const auto& s = d.skeleton;
  const int n = s.vertex_count();
  phi.assign(n, Winding{});
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> incident(n);
  for (int i = 0; i < s.edge_count(); ++i) {
    incident[s.edges[i].tail].push_back(i);
    incident[s.edges[i].head].push_back(i);
  }
  int ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = ncomp;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (int i : incident[a]) {
        const Edge& e = s.edges[i];
        const int b = e.other(a);
        if (comp[b] >= 0) continue;
        comp[b] = ncomp;
        phi[b] = e.tail == a ? phi[a] - d.edge_winding[i] : phi[a] + d.edge_winding[i];
        queue.push_back(b);
      }
    }
    ++ncomp;
  }
  for (int i = 0; i < s.edge_count(); ++i) {
    const Edge& e = s.edges[i];
    if (!(d.edge_winding[i] + phi[e.head] - phi[e.tail]).is_zero()) return false;
  }

  // Component graph: arcs in (core, position) order.
  struct Arc {
    int from, to;
    Winding w;
    int core, pos;
  };
  std::vector<std::vector<Arc>> arcs(ncomp);
  for (int c = 0; c < s.core_count(); ++c) {
    const auto& word = s.cores[c];
    for (std::size_t i = 0; i < word.size(); ++i) {
      const int a = word[i], b = word[(i + 1) % word.size()];
      const Winding w = d.arc_winding[c][i] + phi[b] - phi[a];
      arcs[comp[a]].push_back({a, b, w, c, static_cast<int>(i)});
      arcs[comp[b]].push_back({a, b, w, c, static_cast<int>(i)});
    }
  }
  std::vector<Winding> shift(ncomp);
  std::vector<char> seen(ncomp, 0);
  for (int root = 0; root < ncomp; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int k = queue.front();
      queue.pop_front();
      for (const Arc& arc : arcs[k]) {
        const int ca = comp[arc.from], cb = comp[arc.to];
        if ((ca == k && !seen[cb]) || (cb == k && !seen[ca])) {
          if (tree_arcs) tree_arcs->emplace_back(arc.core, arc.pos);
        }
        if (ca == k && !seen[cb]) {
          seen[cb] = 1;
          shift[cb] = shift[ca] - arc.w;
          queue.push_back(cb);
        } else if (cb == k && !seen[ca]) {
          seen[ca] = 1;
          shift[ca] = shift[cb] + arc.w;
          queue.push_back(ca);
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) phi[v] += shift[comp[v]];
  return true;
}

}  // namespace

std::vector<std::pair<int, int>> gauge_tree_arcs(const AbstractDiagram& skeleton) {
  std::vector<Winding> phi;
  std::vector<std::pair<int, int>> out;
  forest_potential(SurfaceDiagram::trivial(skeleton), phi, &out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> validate(const SurfaceDiagram& d) {
  std::vector<std::string> out = validate(d.skeleton);
  if (!out.empty()) return out;
  if (!shapes_match(d)) {
    out.push_back("winding data does not match skeleton");
    return out;
  }
  for (int c = 0; c < d.skeleton.core_count(); ++c) {
    if (d.skeleton.cores[c].empty()) continue;
    Winding sum;
    for (Winding w : d.arc_winding[c]) sum += w;
    if (sum != d.core_class[c])
      out.push_back("core " + std::to_string(c) + ": arcs sum to " + to_string(sum) +
                    ", class is " + to_string(d.core_class[c]));
  }
  std::vector<Winding> phi;
  if (!forest_potential(d, phi)) out.push_back("graph cycle with nonzero winding");
  return out;
}

SurfaceDiagram gauge_fix(const SurfaceDiagram& d) {
  if (!shapes_match(d)) throw DiagramError("winding data does not match skeleton");
  std::vector<Winding> phi;
  if (!forest_potential(d, phi))
    throw NonContractibleGraphError("graph part has a cycle with nonzero winding");
  SurfaceDiagram out = d;
  const auto& s = d.skeleton;
  for (int i = 0; i < s.edge_count(); ++i)
    out.edge_winding[i] = Winding{};
  for (int c = 0; c < s.core_count(); ++c) {
    const auto& word = s.cores[c];
    for (std::size_t i = 0; i < word.size(); ++i)
      out.arc_winding[c][i] += phi[word[(i + 1) % word.size()]] - phi[word[i]];
  }
  return out;
}

SurfaceDiagram relabel(const SurfaceDiagram& d, const std::vector<int>& label, int* vertex_flips) {
  SurfaceDiagram out;
  std::vector<int> edge_map;
  out.skeleton = relabel(d.skeleton, label, vertex_flips, &edge_map);
  out.edge_winding.assign(d.edge_winding.size(), Winding{});
  for (std::size_t i = 0; i < edge_map.size(); ++i) {
    const Edge& e = d.skeleton.edges[i];
    const bool flipped = label[e.tail] > label[e.head];
    out.edge_winding[edge_map[i]] = flipped ? -d.edge_winding[i] : d.edge_winding[i];
  }
  out.core_class = d.core_class;
  for (int c = 0; c < d.skeleton.core_count(); ++c) {
    const auto& word = d.skeleton.cores[c];
    std::vector<Winding> arcs(word.size());
    if (!word.empty()) {
      const int first = out.skeleton.cores[c][0];
      std::size_t r = 0;
      while (label[word[r]] != first) ++r;
      for (std::size_t j = 0; j < word.size(); ++j) arcs[j] = d.arc_winding[c][(j + r) % word.size()];
    }
    out.arc_winding.push_back(std::move(arcs));
  }
  return gauge_fix(out);
}

CanonicalSurface canonicalize(const SurfaceDiagram& d) {
  const auto& s = d.skeleton;
  const auto canon = canonical_labelings(s.cores, s.edges, s.vertex_count());
  CanonicalSurface out;
  bool have = false;
  int parity = 0;
  bool conflict = false;
  auto flat = [](const SurfaceDiagram& x) {
    std::vector<Winding> v = x.edge_winding;
    for (const auto& a : x.arc_winding) v.insert(v.end(), a.begin(), a.end());
    return v;
  };
  std::vector<Winding> best;
  for (const auto& lab : canon.labelings) {
    int flips = 0;
    SurfaceDiagram cand = relabel(d, lab, &flips);
    auto key = flat(cand);
    if (!have || key < best) {
      have = true;
      best = std::move(key);
      out.form = std::move(cand);
      parity = flips % 2;
      conflict = false;
    } else if (key == best && flips % 2 != parity) {
      conflict = true;
    }
  }
  for (int v = 0; v < out.form.skeleton.vertex_count(); ++v) {
    if (out.form.skeleton.is_external(v)) continue;
    auto& r = out.form.skeleton.rotation[v];
    if (r[1] > r[2]) std::swap(r[1], r[2]);
  }
  out.sign = conflict ? 0 : (parity == 0 ? 1 : -1);
  out.key = to_text(out.form);
  return out;
}

bool diagrams_equal(const SurfaceDiagram& a, const SurfaceDiagram& b) {
  if (a.skeleton.vertex_count() != b.skeleton.vertex_count() ||
      a.skeleton.edge_count() != b.skeleton.edge_count() || a.core_class != b.core_class)
    return false;
  return canonicalize(a).key == canonicalize(b).key;
}

std::string to_text(const SurfaceDiagram& d) {
  const auto& s = d.skeleton;
  std::ostringstream os;
  os << 'C';
  for (int c = 0; c < s.core_count(); ++c) {
    os << '(';
    for (std::size_t i = 0; i < s.cores[c].size(); ++i)
      os << (i ? " " : "") << s.cores[c][i] << '@' << to_string(d.arc_winding[c][i]);
    os << ")@" << to_string(d.core_class[c]);
  }
  os << " E(";
  for (int i = 0; i < s.edge_count(); ++i)
    os << (i ? " " : "") << s.edges[i].tail << '>' << s.edges[i].head << '@'
       << to_string(d.edge_winding[i]);
  os << ')';
  bool first = true;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (s.is_external(v)) continue;
    os << (first ? " R(" : " ") << v << ':' << s.rotation[v][0] << ',' << s.rotation[v][1] << ','
       << s.rotation[v][2];
    first = false;
  }
  if (!first) os << ')';
  return os.str();
}

namespace {

// Splits annotated text into plain diagram text plus the windings in
// reading order, tagged by the section they follow.
struct Annotations {
  std::string plain;
  std::vector<std::vector<Winding>> arcs;
  std::vector<Winding> classes;
  std::vector<Winding> edges;
};

Annotations strip(std::string_view text) {
  Annotations a;
  char section = 0;
  int depth = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw DiagramError("diagram text, column " + std::to_string(i + 1) + ": " + what);
  };
  auto number = [&]() {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (digits == i) fail("expected integer");
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  auto skip_ws = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '@') {
      ++i;
      skip_ws();
      if (i >= text.size() || text[i] != '(') fail("expected '(' after '@'");
      ++i;
      skip_ws();
      Winding w;
      w.p = number();
      skip_ws();
      if (i >= text.size() || text[i] != ',') fail("expected ','");
      ++i;
      skip_ws();
      w.q = number();
      skip_ws();
      if (i >= text.size() || text[i] != ')') fail("expected ')'");
      ++i;
      if (section == 'C' && depth == 1) {
        a.arcs.back().push_back(w);
      } else if (section == 'C' && depth == 0) {
        if (a.classes.size() + 1 != a.arcs.size()) fail("core class given twice");
        a.classes.push_back(w);
      } else if (section == 'E' && depth == 1) {
        a.edges.push_back(w);
      } else {
        fail("unexpected winding");
      }
      a.plain += ' ';
      continue;
    }
    if (ch == 'C' || ch == 'E' || ch == 'R') section = ch;
    if (ch == '(') {
      ++depth;
      if (section == 'C' && depth == 1) {
        if (a.classes.size() < a.arcs.size()) a.classes.push_back(Winding{});
        a.arcs.emplace_back();
      }
    }
    if (ch == ')') --depth;
    a.plain += ch;
    ++i;
  }
  if (a.classes.size() < a.arcs.size()) a.classes.push_back(Winding{});
  return a;
}

}  // namespace

SurfaceDiagram parse_surface_diagram(std::string_view text) {
  Annotations a = strip(text);
  SurfaceDiagram d;
  d.skeleton = parse_diagram(a.plain);
  const auto& s = d.skeleton;
  d.core_class = a.classes;
  d.arc_winding.resize(s.core_count());
  for (int c = 0; c < s.core_count(); ++c) {
    auto& given = a.arcs[c];
    if (!given.empty() && given.size() != s.cores[c].size())
      throw DiagramError("diagram text: core " + std::to_string(c) + " has " +
                         std::to_string(given.size()) + " arc windings for " +
                         std::to_string(s.cores[c].size()) + " vertices");
    given.resize(s.cores[c].size());
    d.arc_winding[c] = given;
  }
  if (!a.edges.empty() && static_cast<int>(a.edges.size()) != s.edge_count())
    throw DiagramError("diagram text: edge windings must be given for all edges or none");
  a.edges.resize(s.edge_count());
  d.edge_winding = a.edges;
  return d;
}

}  // namespace vassiliev
