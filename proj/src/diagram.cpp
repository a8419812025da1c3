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

#include "vassiliev/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace vassiliev {

int AbstractDiagram::external_count() const {
  int u = 0;
  for (const auto& c : cores) u += static_cast<int>(c.size());
  return u;
}

std::pair<int, int> AbstractDiagram::core_position(int v) const {
  for (int c = 0; c < core_count(); ++c) {
    const auto& word = cores[c];
    for (int i = 0; i < static_cast<int>(word.size()); ++i)
      if (word[i] == v) return {c, i};
  }
  return {-1, -1};
}

std::vector<int> AbstractDiagram::incident_edges(int v) const {
  std::vector<int> out;
  for (int i = 0; i < edge_count(); ++i)
    if (edges[i].touches(v)) out.push_back(i);
  return out;
}

AbstractDiagram empty_diagram(int core_count) {
  AbstractDiagram d;
  d.cores.assign(core_count, {});
  return d;
}

AbstractDiagram chord_diagram(const std::vector<std::vector<int>>& words) {
  AbstractDiagram d;
  std::map<int, int> first_vertex;
  std::map<int, int> label_edge;
  int next = 0;
  for (const auto& w : words) {
    std::vector<int> core;
    for (int label : w) {
      int v = next++;
      core.push_back(v);
      d.rotation.push_back(kNoRotation);
      auto it = first_vertex.find(label);
      if (it == first_vertex.end()) {
        first_vertex[label] = v;
      } else {
        if (label_edge.count(label)) throw DiagramError("chord label used more than twice");
        label_edge[label] = static_cast<int>(d.edges.size());
        d.edges.push_back({it->second, v});
      }
    }
    d.cores.push_back(std::move(core));
  }
  if (label_edge.size() != first_vertex.size()) throw DiagramError("chord label used once");
  // Renumber edges by first occurrence of their tail.
  std::sort(d.edges.begin(), d.edges.end(),
            [](const Edge& a, const Edge& b) { return a.tail < b.tail; });
  return d;
}

std::vector<std::vector<int>> graph_components(const AbstractDiagram& d) {
  const int n = d.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : d.edges)
    if (e.tail >= 0 && e.tail < n && e.head >= 0 && e.head < n) parent[find(e.tail)] = find(e.head);
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> validate(const AbstractDiagram& d) {
  std::vector<std::string> bad;
  const int n = d.vertex_count();
  std::vector<int> on_core(n, 0);
  for (const auto& c : d.cores)
    for (int v : c) {
      if (v < 0 || v >= n) {
        bad.push_back("core vertex out of range");
        continue;
      }
      ++on_core[v];
    }
  std::vector<int> valence(n, 0);
  for (const auto& e : d.edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      bad.push_back("edge endpoint out of range");
      continue;
    }
    if (e.tail == e.head) bad.push_back("self-loop");
    ++valence[e.tail];
    ++valence[e.head];
  }
  if (!bad.empty()) return bad;

  for (int v = 0; v < n; ++v) {
    const bool ext = d.is_external(v);
    if (ext) {
      if (on_core[v] != 1) bad.push_back("external vertex not on exactly one core");
      if (valence[v] != 1) bad.push_back("external vertex valence");
      continue;
    }
    if (on_core[v] != 0) bad.push_back("internal vertex on core");
    if (valence[v] != 3) bad.push_back("internal vertex valence");
    auto r = d.rotation[v];
    std::sort(r.begin(), r.end());
    const bool distinct = r[0] != r[1] && r[1] != r[2];
    bool incident = true;
    for (int ei : r)
      if (ei < 0 || ei >= d.edge_count() || !d.edges[ei].touches(v)) incident = false;
    if (!distinct || !incident) bad.push_back("cyclic order does not list the incident edges");
  }

  for (const auto& comp : graph_components(d)) {
    const bool has_ext =
        std::any_of(comp.begin(), comp.end(), [&](int v) { return d.is_external(v); });
    if (!has_ext) bad.push_back("component without external vertex");
  }

  const int u = d.external_count();
  const int t = n - u;
  const int e = d.edge_count();
  if ((u + t) % 2 != 0) bad.push_back("u+t odd");
  if (2 * e != u + 3 * t) bad.push_back("edge count");
  if (bad.empty()) {
    const int deg = (u + t) / 2;
    if (t > 2 * deg) bad.push_back("t exceeds 2 deg");
    if (e > 3 * deg) bad.push_back("e exceeds 3 deg");
  }
  return bad;
}

bool is_valid(const AbstractDiagram& d) { return validate(d).empty(); }

int degree(const AbstractDiagram& d) {
  return (d.external_count() + d.internal_count()) / 2;
}

std::string to_text(const AbstractDiagram& d) {
  std::ostringstream os;
  os << 'C';
  for (const auto& c : d.cores) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  os << " E(";
  for (int i = 0; i < d.edge_count(); ++i)
    os << (i ? " " : "") << d.edges[i].tail << '>' << d.edges[i].head;
  os << ')';
  bool first = true;
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.is_external(v)) continue;
    os << (first ? " R(" : " ") << v << ':' << d.rotation[v][0] << ',' << d.rotation[v][1]
       << ',' << d.rotation[v][2];
    first = false;
  }
  if (!first) os << ')';
  return os.str();
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  int integer() {
    skip_ws();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_ || (i_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected integer");
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DiagramError("diagram text, column " + std::to_string(i_ + 1) + ": " + what);
  }
  std::size_t position() const { return i_; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

AbstractDiagram parse_diagram(std::string_view text) {
  Cursor cur(text);
  AbstractDiagram d;
  cur.expect('C');
  int max_id = -1;
  while (cur.accept('(')) {
    std::vector<int> core;
    while (!cur.accept(')')) {
      core.push_back(cur.integer());
      max_id = std::max(max_id, core.back());
    }
    d.cores.push_back(std::move(core));
  }
  cur.expect('E');
  cur.expect('(');
  while (!cur.accept(')')) {
    Edge e;
    e.tail = cur.integer();
    cur.expect('>');
    e.head = cur.integer();
    max_id = std::max({max_id, e.tail, e.head});
    d.edges.push_back(e);
  }
  std::map<int, std::array<int, 3>> rot;
  if (cur.accept('R')) {
    cur.expect('(');
    while (!cur.accept(')')) {
      int v = cur.integer();
      cur.expect(':');
      std::array<int, 3> r{};
      r[0] = cur.integer();
      cur.expect(',');
      r[1] = cur.integer();
      cur.expect(',');
      r[2] = cur.integer();
      rot[v] = r;
      max_id = std::max(max_id, v);
    }
  }
  if (!cur.done()) cur.fail("trailing characters");
  if (max_id < 0 && d.cores.empty()) cur.fail("no cores");
  d.rotation.assign(max_id + 1, kNoRotation);
  for (auto& [v, r] : rot) {
    if (v < 0) cur.fail("negative vertex id");
    d.rotation[v] = r;
  }
  return d;
}

}  // namespace vassiliev
