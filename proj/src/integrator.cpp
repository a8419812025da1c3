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

#include "vassiliev/integrator.hpp"

#include "vassiliev/forms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace vassiliev {
namespace {

double curve_height_slope(const Component& c, int samples) {
  double slope = 0, bump2 = 0;
  Link one;
  one.components = {c};
  for (int k = 0; k < samples; ++k)
    slope = std::max(slope, std::abs(eval(one, 0, static_cast<double>(k) / samples).tangent[2]));
  for (const auto& b : c.bumps) bump2 += std::abs(b.amplitude) * 12.0 / (b.halfwidth * b.halfwidth);
  return slope + (c.h.curvature_bound() + bump2) / samples;
}

// Bound for the horizontal second derivative; bumps only move heights.
double curve_bound(const Component& c) {
  return std::hypot(c.x.curvature_bound(), c.y.curvature_bound());
}

// Shortest arc of Z/m covering the given cells: {start, length}.
std::pair<int, int> covering_arc(std::vector<int> cells, int m) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  const int k = static_cast<int>(cells.size());
  int best_gap = -1, start = cells[0];
  for (int i = 0; i < k; ++i) {
    const int next = i + 1 < k ? cells[i + 1] : cells[0] + m;
    if (next - cells[i] > best_gap) {
      best_gap = next - cells[i];
      start = cells[(i + 1) % k];
    }
  }
  return {start, m - best_gap + 1};
}

}  // namespace

IntegrandValue integrand(const AbstractDiagram& ka, const Configuration& config, const Link& link,
                         const PropagatorParams& params) {
  const int n = ka.vertex_count();
  const int u = ka.external_count(), t = ka.internal_count(), e = ka.edge_count();
  if (u + 3 * t != 2 * e) throw DimensionMismatchError("integrand: u + 3t differs from 2e");
  if (ka.core_count() != link.size()) throw LinkError("integrand: core count differs from link");

  std::vector<MPoint> pos(n);
  std::vector<std::vector<Vec3>> columns(n);
  for (int c = 0; c < ka.core_count(); ++c)
    for (int v : ka.cores[c]) {
      const auto cp = eval(link, c, config.param.at(v));
      pos[v] = cp.point;
      columns[v] = {cp.tangent};
    }
  for (int v = 0; v < n; ++v) {
    if (ka.is_external(v)) continue;
    const Vec3& p = config.interior.at(v);
    const TorusPoint b = reduce(p[0], p[1]);
    pos[v] = {b.x, b.y, p[2]};
    columns[v] = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  }
  std::vector<int> owner;
  std::vector<Vec3> frame;
  std::vector<int> first_column(n);
  for (int v = 0; v < n; ++v) {
    first_column[v] = static_cast<int>(frame.size());
    for (const auto& col : columns[v]) {
      owner.push_back(v);
      frame.push_back(col);
    }
  }

  IntegrandValue out;
  const int dim = static_cast<int>(frame.size());
  std::vector<std::vector<std::vector<double>>> w(e, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0)));
  for (int k = 0; k < e; ++k) {
    const Edge& edge = ka.edges[k];
    TwoForm a;
    try {
      a = omega(pos[edge.tail], pos[edge.head], params);
    } catch (const InsideNError&) {
      return out;
    }
    auto lift6 = [&](int i) {
      std::array<double, 6> x{};
      const int off = owner[i] == edge.tail ? 0 : owner[i] == edge.head ? 3 : -1;
      if (off >= 0)
        for (int r = 0; r < 3; ++r) x[off + r] = frame[i][r];
      return x;
    };
    bool any = false;
    for (int i = 0; i < dim; ++i) {
      const auto xi = lift6(i);
      for (int j = 0; j < dim; ++j) {
        const auto xj = lift6(j);
        double s = 0;
        for (int r = 0; r < 6; ++r)
          for (int c = 0; c < 6; ++c) s += xi[r] * a[r][c] * xj[c];
        w[k][i][j] = s;
        any = any || s != 0;
      }
    }
    if (!any) return out;
  }

  out.form_value = wedge_value(w);
  if (t == 0) {
    std::vector<int> oriented;
    for (const auto& edge : ka.edges) {
      oriented.push_back(first_column[edge.head]);
      oriented.push_back(first_column[edge.tail]);
    }
    out.orientation_sign = permutation_parity(oriented);
  }
  out.value = out.orientation_sign * out.form_value;
  if (out.form_value == 0) return out;
  out.zero = false;
  out.diagram = realize(link, ka, config.param, config.interior);
  return out;
}

bool SupportBox::contains(double s, double t) const {
  const double ds = s - s0 - std::floor(s - s0), dt = t - t0 - std::floor(t - t0);
  return ds < ls && dt < lt;
}

std::vector<SupportBox> support_boxes(const Link& link, int comp_a, int comp_b, const PropagatorParams& params,
                                      int cells) {
  const int m = cells;
  const double ds = 1.0 / m;
  const double r0 = params.r0(), delta = params.delta();
  struct Cell {
    TorusPoint c;
    double rx, ry;
  };
  auto segments = [&](int comp) {
    std::vector<Cell> out;
    const double bow = curve_bound(link.components[comp]) * ds * ds / 8 + 1e-12;
    for (int k = 0; k < m; ++k) {
      const auto p = eval(link, comp, k * ds).lift, q = eval(link, comp, (k + 1) * ds).lift;
      out.push_back({reduce((p[0] + q[0]) / 2, (p[1] + q[1]) / 2), std::abs(q[0] - p[0]) / 2 + bow,
                     std::abs(q[1] - p[1]) / 2 + bow});
    }
    return out;
  };
  const auto sa = segments(comp_a);
  const auto sb = comp_a == comp_b ? sa : segments(comp_b);
  const double slope = comp_a == comp_b ? curve_height_slope(link.components[comp_a], m) : 0;

  std::vector<char> flag(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (comp_a == comp_b) {
        const int d = std::min(std::abs(i - j), m - std::abs(i - j));
        if (slope * (d + 1) * ds < delta) continue;
      }
      const Vec2 off = displacement(sa[i].c, sb[j].c);
      if (std::abs(off[0]) > sa[i].rx + sb[j].rx + r0 || std::abs(off[1]) > sa[i].ry + sb[j].ry + r0) continue;
      flag[static_cast<std::size_t>(i) * m + j] = 1;
    }

  std::vector<SupportBox> out;
  for (std::size_t start = 0; start < flag.size(); ++start) {
    if (flag[start] != 1) continue;
    std::vector<int> is, js;
    std::deque<std::size_t> queue{start};
    flag[start] = 2;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const int i = static_cast<int>(cur / m), j = static_cast<int>(cur % m);
      is.push_back(i);
      js.push_back(j);
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const std::size_t nb = static_cast<std::size_t>((i + di + m) % m) * m + (j + dj + m) % m;
          if (flag[nb] == 1) {
            flag[nb] = 2;
            queue.push_back(nb);
          }
        }
    }
    const auto [i0, li] = covering_arc(is, m);
    const auto [j0, lj] = covering_arc(js, m);
    out.push_back({comp_a, comp_b, i0 * ds, li * ds, j0 * ds, lj * ds});
  }
  return out;
}

}  // namespace vassiliev
