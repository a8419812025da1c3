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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace oracle {
namespace {

using Matrix = std::vector<std::vector<int>>;

struct Shape {
  std::vector<int> core_sizes;
  int u = 0;
  int t = 0;
  int vertices() const { return u + t; }
};

std::vector<std::vector<int>> compositions(int total, int parts) {
  if (parts == 1) return {{total}};
  std::vector<std::vector<int>> out;
  for (int first = 0; first <= total; ++first)
    for (auto rest : compositions(total - first, parts - 1)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

bool every_component_touches_core(const Matrix& a, int u) {
  const int n = static_cast<int>(a.size());
  std::vector<int> seen(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < u; ++v) {
    seen[v] = 1;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w)
      if (a[v][w] > 0 && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

// Least upper-triangle encoding over core rotations and internal
// permutations, with the number of relabelings that attain it.
std::pair<std::vector<int>, std::int64_t> least_code(const Shape& s, const Matrix& a) {
  const int n = s.vertices();
  std::vector<int> offsets(s.core_sizes.size(), 0);
  for (std::size_t c = 1; c < s.core_sizes.size(); ++c) offsets[c] = offsets[c - 1] + s.core_sizes[c - 1];
  std::vector<int> shift(s.core_sizes.size(), 0);
  std::vector<int> internal(s.t);
  std::iota(internal.begin(), internal.end(), 0);

  std::vector<int> best;
  std::int64_t count = 0;
  std::vector<int> label(n), code;
  code.reserve(n * (n - 1) / 2);
  while (true) {
    std::sort(internal.begin(), internal.end());
    do {
      for (std::size_t c = 0; c < s.core_sizes.size(); ++c)
        for (int i = 0; i < s.core_sizes[c]; ++i)
          label[offsets[c] + i] = offsets[c] + (i + shift[c]) % s.core_sizes[c];
      for (int i = 0; i < s.t; ++i) label[s.u + i] = s.u + internal[i];
      std::vector<int> inverse(n);
      for (int v = 0; v < n; ++v) inverse[label[v]] = v;
      code.clear();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) code.push_back(a[inverse[i]][inverse[j]]);
      if (best.empty() || code < best) {
        best = code;
        count = 1;
      } else if (code == best) {
        ++count;
      }
    } while (std::next_permutation(internal.begin(), internal.end()));
    std::size_t c = 0;
    for (; c < shift.size(); ++c) {
      if (s.core_sizes[c] > 0 && ++shift[c] < s.core_sizes[c]) break;
      shift[c] = 0;
    }
    if (c == shift.size()) break;
  }
  return {best, count};
}

void fill(const Shape& s, Matrix& a, std::vector<int>& remaining, int v, int min_w,
          std::map<std::vector<int>, std::int64_t>& found) {
  const int n = s.vertices();
  while (v < n && remaining[v] == 0) {
    ++v;
    min_w = v + 1;
  }
  if (v == n) {
    if (!every_component_touches_core(a, s.u)) return;
    auto [code, aut] = least_code(s, a);
    found.emplace(std::move(code), aut);
    return;
  }
  for (int w = std::max(min_w, v + 1); w < n; ++w) {
    if (remaining[w] == 0) continue;
    --remaining[v];
    --remaining[w];
    ++a[v][w];
    ++a[w][v];
    fill(s, a, remaining, v, w, found);
    --a[v][w];
    --a[w][v];
    ++remaining[v];
    ++remaining[w];
  }
}

}  // namespace

std::vector<BruteClass> brute_force_classes(int n, int l) {
  std::vector<BruteClass> out;
  for (int t = 0; t <= 2 * n; ++t) {
    const int u = 2 * n - t;
    if (u < 1) continue;
    for (const auto& sizes : compositions(u, l)) {
      Shape s{sizes, u, t};
      Matrix a(s.vertices(), std::vector<int>(s.vertices(), 0));
      std::vector<int> remaining(s.vertices(), 3);
      std::fill(remaining.begin(), remaining.begin() + u, 1);
      std::map<std::vector<int>, std::int64_t> found;
      fill(s, a, remaining, 0, 1, found);
      for (auto& [code, aut] : found) out.push_back({sizes, code, aut});
    }
  }
  return out;
}

BruteClass classify(const vassiliev::AbstractDiagram& d) {
  Shape s;
  std::vector<int> label(d.vertex_count(), -1);
  for (const auto& core : d.cores) {
    s.core_sizes.push_back(static_cast<int>(core.size()));
    for (int v : core) label[v] = s.u++;
  }
  int next = s.u;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (label[v] < 0) label[v] = next++;
  s.t = next - s.u;
  Matrix a(next, std::vector<int>(next, 0));
  for (const auto& e : d.edges) {
    ++a[label[e.tail]][label[e.head]];
    ++a[label[e.head]][label[e.tail]];
  }
  auto [code, aut] = least_code(s, a);
  return {s.core_sizes, code, aut};
}

ClosednessSample propagator_closedness(const vassiliev::PropagatorParams& p, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r0 = p.r0();
  const double step = 1e-3 * r0;
  ClosednessSample out;
  out.points = points;

  for (int k = 0; k < points; ++k) {
    const double radius = 0.9 * r0 * std::sqrt(unit(rng));
    const double angle = 2 * M_PI * unit(rng);
    const double hx = 0.05 + 0.3 * unit(rng);
    const double hy = hx + p.delta() + 0.05 + 0.4 * unit(rng);
    std::array<double, 6> z = {unit(rng), unit(rng), hx, 0, 0, hy};
    z[3] = z[0] + radius * std::cos(angle);
    z[4] = z[1] + radius * std::sin(angle);
    if (unit(rng) < 0.5) {
      std::swap(z[0], z[3]);
      std::swap(z[1], z[4]);
      std::swap(z[2], z[5]);
    }

    auto form_at = [&](const std::array<double, 6>& q) {
      return vassiliev::omega({q[0], q[1], q[2]}, {q[3], q[4], q[5]}, p);
    };
    const auto center = form_at(z);
    for (const auto& row : center)
      for (double x : row) out.scale = std::max(out.scale, std::abs(x) / r0);

    std::array<vassiliev::TwoForm, 6> grad{};
    for (int i = 0; i < 6; ++i) {
      std::array<vassiliev::TwoForm, 4> f;
      const double offsets[4] = {2, 1, -1, -2};
      for (int m = 0; m < 4; ++m) {
        auto q = z;
        q[i] += offsets[m] * step;
        f[m] = form_at(q);
      }
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
          grad[i][r][c] = (-f[0][r][c] + 8 * f[1][r][c] - 8 * f[2][r][c] + f[3][r][c]) / (12 * step);
    }
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        for (int l = j + 1; l < 6; ++l) {
          const double d = grad[i][j][l] + grad[j][l][i] + grad[l][i][j];
          out.max_defect = std::max(out.max_defect, std::abs(d));
        }
  }
  return out;
}

}  // namespace oracle
