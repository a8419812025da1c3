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

#include "vassiliev/canon.hpp"

#include <algorithm>
#include <numeric>

namespace vassiliev {
namespace {

class LabelSearch {
 public:
  LabelSearch(const std::vector<std::vector<int>>& cores, const std::vector<Edge>& edges, int n)
      : cores_(cores), edges_(edges), n_(n), neighbors_(n), label_(n, -1) {
    for (const auto& e : edges) {
      neighbors_[e.tail].push_back(e.head);
      neighbors_[e.head].push_back(e.tail);
    }
    for (auto& nb : neighbors_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }

  CanonicalLabelings run() {
    rotate_core(0);
    return std::move(result_);
  }

 private:
  void rotate_core(std::size_t c) {
    if (c == cores_.size()) {
      search(0);
      return;
    }
    const auto& word = cores_[c];
    if (word.empty()) {
      rotate_core(c + 1);
      return;
    }
    for (std::size_t start = 0; start < word.size(); ++start) {
      for (std::size_t i = 0; i < word.size(); ++i) assign(word[(start + i) % word.size()]);
      rotate_core(c + 1);
      for (std::size_t i = 0; i < word.size(); ++i) unassign();
    }
  }

  void assign(int v) {
    label_[v] = static_cast<int>(order_.size());
    order_.push_back(v);
  }
  void unassign() {
    label_[order_.back()] = -1;
    order_.pop_back();
  }

  void search(std::size_t k) {
    while (k < order_.size()) {
      const int v = order_[k];
      std::vector<int> fresh;
      for (int w : neighbors_[v])
        if (label_[w] < 0) fresh.push_back(w);
      if (!fresh.empty()) {
        std::sort(fresh.begin(), fresh.end());
        do {
          for (int w : fresh) assign(w);
          search(k + 1);
          for (std::size_t i = 0; i < fresh.size(); ++i) unassign();
        } while (std::next_permutation(fresh.begin(), fresh.end()));
        return;
      }
      ++k;
    }
    if (static_cast<int>(order_.size()) < n_) {
      // Component without a labeled vertex: try every root.
      for (int w = 0; w < n_; ++w) {
        if (label_[w] >= 0) continue;
        assign(w);
        search(k);
        unassign();
      }
      return;
    }
    emit();
  }

  void emit() {
    std::vector<int> code;
    code.reserve(cores_.size() + 1 + 2 * edges_.size());
    for (const auto& c : cores_) code.push_back(static_cast<int>(c.size()));
    code.push_back(-1);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edges_.size());
    for (const auto& e : edges_) {
      int a = label_[e.tail], b = label_[e.head];
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto [a, b] : pairs) {
      code.push_back(a);
      code.push_back(b);
    }
    if (result_.labelings.empty() || code < result_.code) {
      result_.code = std::move(code);
      result_.labelings.clear();
      result_.labelings.push_back(label_);
    } else if (code == result_.code) {
      result_.labelings.push_back(label_);
    }
  }

  const std::vector<std::vector<int>>& cores_;
  const std::vector<Edge>& edges_;
  int n_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> label_;
  std::vector<int> order_;
  CanonicalLabelings result_;
};

bool same_cycle(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (int s = 0; s < 3; ++s)
    if (a[0] == b[s] && a[1] == b[(s + 1) % 3] && a[2] == b[(s + 2) % 3]) return true;
  return false;
}

}  // namespace

CanonicalLabelings canonical_labelings(const std::vector<std::vector<int>>& cores,
                                       const std::vector<Edge>& edges, int vertex_count) {
  return LabelSearch(cores, edges, vertex_count).run();
}

std::vector<int> induced_edge_map(const std::vector<Edge>& edges, const std::vector<int>& vertex_map) {
  const int m = static_cast<int>(edges.size());
  std::vector<int> out(m, -1);
  std::vector<char> used(m, 0);
  for (int i = 0; i < m; ++i) {
    const int a = vertex_map[edges[i].tail], b = vertex_map[edges[i].head];
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      const auto& f = edges[j];
      if ((f.tail == a && f.head == b) || (f.tail == b && f.head == a)) {
        out[i] = j;
        used[j] = 1;
        break;
      }
    }
  }
  return out;
}

int flip_count(const AbstractDiagram& from, const AbstractDiagram& to, const std::vector<int>& perm) {
  const int m = from.edge_count();
  std::vector<int> emap(m, -1);
  std::vector<char> used(m, 0);
  for (int i = 0; i < m; ++i) {
    const int a = perm[from.edges[i].tail], b = perm[from.edges[i].head];
    for (int j = 0; j < m; ++j) {
      if (used[j] || !to.edges[j].touches(a) || to.edges[j].other(a) != b) continue;
      emap[i] = j;
      used[j] = 1;
      break;
    }
  }
  int flips = 0;
  for (int v = 0; v < from.vertex_count(); ++v) {
    if (from.is_external(v)) continue;
    std::array<int, 3> mapped{};
    for (int k = 0; k < 3; ++k) mapped[k] = emap[from.rotation[v][k]];
    if (!same_cycle(mapped, to.rotation[perm[v]])) ++flips;
  }
  return flips;
}

AbstractDiagram relabel(const AbstractDiagram& d, const std::vector<int>& label, int* vertex_flips,
                        std::vector<int>* edge_map) {
  AbstractDiagram out;
  const int n = d.vertex_count();
  out.rotation.assign(n, kNoRotation);
  for (const auto& word : d.cores) {
    std::vector<int> w;
    w.reserve(word.size());
    for (int v : word) w.push_back(label[v]);
    if (!w.empty()) std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
    out.cores.push_back(std::move(w));
  }
  const int m = d.edge_count();
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) {
    int a = label[d.edges[i].tail], b = label[d.edges[i].head];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return key(i) < key(j); });
  std::vector<int> new_index(m);
  out.edges.resize(m);
  for (int k = 0; k < m; ++k) {
    new_index[idx[k]] = k;
    auto [a, b] = key(idx[k]);
    out.edges[k] = {a, b};
  }
  int flips = 0;
  for (int v = 0; v < n; ++v) {
    if (d.is_external(v)) continue;
    std::array<int, 3> r{};
    for (int k = 0; k < 3; ++k) r[k] = new_index[d.rotation[v][k]];
    std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
    if (r[1] > r[2]) ++flips;
    out.rotation[label[v]] = r;
  }
  if (vertex_flips) *vertex_flips = flips;
  if (edge_map) *edge_map = std::move(new_index);
  return out;
}

CanonicalDiagram canonicalize(const AbstractDiagram& d) {
  const auto canon = canonical_labelings(d.cores, d.edges, d.vertex_count());
  CanonicalDiagram out;
  int parity = -1;
  bool odd_automorphism = false;
  for (const auto& lab : canon.labelings) {
    int flips = 0;
    auto form = relabel(d, lab, &flips);
    if (parity < 0) {
      parity = flips % 2;
      out.form = std::move(form);
    } else if (parity != flips % 2) {
      odd_automorphism = true;
      break;
    }
  }
  for (int v = 0; v < out.form.vertex_count(); ++v) {
    if (out.form.is_external(v)) continue;
    auto& r = out.form.rotation[v];
    if (r[1] > r[2]) std::swap(r[1], r[2]);
  }
  out.sign = odd_automorphism ? 0 : (parity == 0 ? 1 : -1);
  return out;
}

bool isomorphic(const AbstractDiagram& a, const AbstractDiagram& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.core_count() != b.core_count())
    return false;
  return canonical_labelings(a.cores, a.edges, a.vertex_count()).code ==
         canonical_labelings(b.cores, b.edges, b.vertex_count()).code;
}

std::vector<std::vector<int>> automorphisms(const AbstractDiagram& d) {
  const auto canon = canonical_labelings(d.cores, d.edges, d.vertex_count());
  const auto& base = canon.labelings.front();
  std::vector<int> inverse(base.size());
  for (std::size_t v = 0; v < base.size(); ++v) inverse[base[v]] = static_cast<int>(v);
  std::vector<std::vector<int>> out;
  for (const auto& lab : canon.labelings) {
    std::vector<int> sigma(lab.size());
    for (std::size_t v = 0; v < lab.size(); ++v) sigma[v] = inverse[lab[v]];
    out.push_back(std::move(sigma));
  }
  return out;
}

AutomorphismOrders automorphism_orders(const AbstractDiagram& d) {
  AutomorphismOrders out;
  for (const auto& sigma : automorphisms(d)) {
    ++out.all;
    if (flip_count(d, d, sigma) % 2 == 0) ++out.even;
  }
  return out;
}

}  // namespace vassiliev
