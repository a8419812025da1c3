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

#include "vassiliev/enumerate.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "vassiliev/canon.hpp"

namespace vassiliev {
namespace {

// Fills loopless multigraphs with prescribed degrees, vertex by vertex.
class MultigraphFill {
 public:
  MultigraphFill(std::vector<int> degree, std::vector<std::vector<int>> cores,
                 std::map<std::vector<int>, AbstractDiagram>& sink)
      : remaining_(std::move(degree)), cores_(std::move(cores)), sink_(sink) {}

  void run() { fill(0, 1); }

 private:
  void fill(int v, int w) {
    const int n = static_cast<int>(remaining_.size());
    if (v == n) {
      finish();
      return;
    }
    if (remaining_[v] == 0) {
      fill(v + 1, v + 2);
      return;
    }
    if (w >= n) return;
    // Choose a multiplicity for the pair (v, w), highest first.
    const int most = std::min(remaining_[v], remaining_[w]);
    for (int k = most; k >= 0; --k) {
      remaining_[v] -= k;
      remaining_[w] -= k;
      for (int i = 0; i < k; ++i) edges_.push_back({v, w});
      fill(v, w + 1);
      for (int i = 0; i < k; ++i) edges_.pop_back();
      remaining_[v] += k;
      remaining_[w] += k;
    }
  }

  void finish() {
    AbstractDiagram d;
    d.cores = cores_;
    d.edges = edges_;
    const int n = static_cast<int>(remaining_.size());
    d.rotation.assign(n, kNoRotation);
    int u = 0;
    for (const auto& c : cores_) u += static_cast<int>(c.size());
    for (int v = u; v < n; ++v) {
      auto inc = d.incident_edges(v);
      d.rotation[v] = {inc[0], inc[1], inc[2]};
    }
    if (!is_valid(d)) return;
    auto canon = canonical_labelings(d.cores, d.edges, n);
    if (sink_.count(canon.code)) return;
    int flips = 0;
    auto form = relabel(d, canon.labelings.front(), &flips);
    for (int v = 0; v < n; ++v) {
      if (form.is_external(v)) continue;
      auto& r = form.rotation[v];
      if (r[1] > r[2]) std::swap(r[1], r[2]);
    }
    sink_.emplace(std::move(canon.code), std::move(form));
  }

  std::vector<int> remaining_;
  std::vector<std::vector<int>> cores_;
  std::vector<Edge> edges_;
  std::map<std::vector<int>, AbstractDiagram>& sink_;
};

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<AbstractDiagram> enumerate(int n, int l, int degree_cap) {
  if (n < 0 || l < 1) throw DiagramError("enumerate: need n >= 0 and l >= 1");
  if (n > degree_cap)
    throw ResourceBoundError("enumerate: degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(degree_cap));
  std::map<std::vector<int>, AbstractDiagram> classes;
  for (int u = 2 * n; u >= 0; --u) {
    const int t = 2 * n - u;
    if ((u + 3 * t) % 2 != 0) continue;
    if (u == 0 && t > 0) continue;
    std::vector<std::vector<int>> splits;
    std::vector<int> cur;
    compositions(u, l, cur, splits);
    for (const auto& split : splits) {
      std::vector<std::vector<int>> cores(l);
      int next = 0;
      for (int c = 0; c < l; ++c)
        for (int i = 0; i < split[c]; ++i) cores[c].push_back(next++);
      std::vector<int> degree(u + t, 3);
      std::fill(degree.begin(), degree.begin() + u, 1);
      MultigraphFill(degree, cores, classes).run();
    }
  }
  std::vector<AbstractDiagram> out;
  out.reserve(classes.size());
  for (auto& [code, d] : classes) out.push_back(std::move(d));
  return out;
}

}  // namespace vassiliev
