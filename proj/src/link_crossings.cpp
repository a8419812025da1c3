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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "vassiliev/link.hpp"

namespace vassiliev {
namespace {

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double det2(const Vec3& a, const Vec3& b) { return a[0] * b[1] - a[1] * b[0]; }

double param_gap(double s, double t) {
  double d = std::abs(s - t);
  d -= std::floor(d);
  return std::min(d, 1 - d);
}

double torus_dist3(const MPoint& a, const MPoint& b) {
  const Vec2 d = displacement(a.base(), b.base());
  return std::sqrt(d[0] * d[0] + d[1] * d[1] + (a.h - b.h) * (a.h - b.h));
}

// Bound for |second derivative| of the full curve, bumps included.
double curve_curvature_bound(const Component& c) {
  double bump2 = 0;
  for (const auto& b : c.bumps) bump2 += std::abs(b.amplitude) * 12.0 / (b.halfwidth * b.halfwidth);
  const double cx = c.x.curvature_bound(), cy = c.y.curvature_bound();
  const double ch = c.h.curvature_bound() + bump2;
  return std::sqrt(cx * cx + cy * cy + ch * ch);
}

std::string where(int comp, double s) {
  std::ostringstream os;
  os << "component " << comp << " at s=" << s;
  return os.str();
}

}  // namespace

double framing_margin(const Link& link, int samples) {
  const double fn = norm3(link.framing);
  if (fn == 0) return -1;
  double margin = std::numbers::pi;
  for (int c = 0; c < link.size(); ++c) {
    double min_angle = std::numbers::pi, min_speed = 1e300;
    for (int k = 0; k < samples; ++k) {
      const auto p = eval(link, c, static_cast<double>(k) / samples);
      const double speed = norm3(p.tangent);
      min_speed = std::min(min_speed, speed);
      double cosang = (p.tangent[0] * link.framing[0] + p.tangent[1] * link.framing[1] +
                       p.tangent[2] * link.framing[2]) / (speed * fn);
      cosang = std::clamp(std::abs(cosang), 0.0, 1.0);
      min_angle = std::min(min_angle, std::acos(cosang));
    }
    const double drift = curve_curvature_bound(link.components[c]) / min_speed * (0.5 / samples);
    margin = std::min(margin, min_angle - drift);
  }
  return margin;
}

std::vector<std::string> validate(const Link& link, const ValidationOptions& opt) {
  std::vector<std::string> out;
  if (link.components.empty()) out.push_back("link has no components");
  if (norm3(link.framing) == 0) out.push_back("framing vector is zero");
  const int m = opt.samples;
  std::vector<std::vector<CurvePoint>> pts(link.size());
  for (int c = 0; c < link.size(); ++c) {
    for (int k = 0; k < m; ++k) {
      const double s = static_cast<double>(k) / m;
      pts[c].push_back(eval(link, c, s));
      const auto& p = pts[c].back();
      if (norm3(p.tangent) < opt.min_speed) {
        out.push_back("not immersed: " + where(c, s));
        break;
      }
      if (!(p.point.h > 0 && p.point.h < 1)) {
        out.push_back("height outside (0,1): " + where(c, s));
        break;
      }
    }
  }
  if (!out.empty()) return out;

  std::vector<MPoint> dp_pos;
  for (const auto& d : link.double_points) {
    const auto a = eval(link, d.comp_a, d.s_a), b = eval(link, d.comp_b, d.s_b);
    if (torus_dist3(a.point, b.point) > 1e-9)
      out.push_back("double point strands do not meet: " + where(d.comp_a, d.s_a));
    const double cross = det2(a.tangent, b.tangent);
    if (std::abs(cross) < 1e-9 * norm3(a.tangent) * norm3(b.tangent))
      out.push_back("double point is not transverse: " + where(d.comp_a, d.s_a));
    dp_pos.push_back(a.point);
  }
  const double ball_gap = 3 * opt.epsilon / opt.degree;
  for (std::size_t i = 0; i < dp_pos.size(); ++i)
    for (std::size_t j = i + 1; j < dp_pos.size(); ++j)
      if (torus_dist3(dp_pos[i], dp_pos[j]) - 2 * link.ball_radius <= ball_gap)
        out.push_back("balls around double points " + std::to_string(i) + " and " + std::to_string(j) +
                      " are closer than 3*epsilon/n");

  auto near_double_point = [&](const MPoint& p) {
    for (const auto& q : dp_pos)
      if (torus_dist3(p, q) < link.ball_radius) return true;
    return false;
  };
  const double local = 4.0 / m;
  for (int a = 0; a < link.size(); ++a)
    for (int b = a; b < link.size(); ++b)
      for (int i = 0; i < m; ++i)
        for (int j = (a == b ? i + 1 : 0); j < m; ++j) {
          if (a == b && param_gap(static_cast<double>(i) / m, static_cast<double>(j) / m) < local) continue;
          if (torus_dist3(pts[a][i].point, pts[b][j].point) >= opt.min_separation) continue;
          if (near_double_point(pts[a][i].point)) continue;
          out.push_back("strands meet: " + where(a, static_cast<double>(i) / m) + " and " +
                        where(b, static_cast<double>(j) / m));
          goto embedded_done;
        }
embedded_done:
  if (framing_margin(link) <= 0) out.push_back("framing is not admissible: tangent meets +-framing");
  return out;
}

std::vector<Resolution> resolutions(const Link& link) {
  const int k = static_cast<int>(link.double_points.size());
  if (k == 0) throw LinkError("resolutions: link has no double points");
  if (k > 16) throw LinkError("resolutions: too many double points");
  std::vector<double> orient(k);
  std::vector<double> width(k);
  for (int i = 0; i < k; ++i) {
    const auto& d = link.double_points[i];
    const auto a = eval(link, d.comp_a, d.s_a), b = eval(link, d.comp_b, d.s_b);
    const double cross = det2(a.tangent, b.tangent);
    if (std::abs(cross) < 1e-9 * norm3(a.tangent) * norm3(b.tangent))
      throw NonTransverseError("double point " + std::to_string(i) + " has parallel strands");
    orient[i] = cross > 0 ? 1 : -1;
    width[i] = link.ball_radius / norm3(a.tangent);
  }
  std::vector<Resolution> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    Resolution r;
    r.link = link;
    r.link.double_points.clear();
    for (int i = 0; i < k; ++i) {
      const int eta = (mask >> i) & 1 ? -1 : 1;
      r.eta.push_back(eta);
      r.sign *= eta;
      const auto& d = link.double_points[i];
      r.link.components[d.comp_a].bumps.push_back({d.s_a, width[i], link.push * eta * orient[i]});
    }
    out.push_back(std::move(r));
  }
  return out;
}

SurfaceDiagram realize(const Link& link, const AbstractDiagram& skeleton, const std::vector<double>& param,
                       const std::vector<Vec3>& interior) {
  if (skeleton.core_count() != link.size()) throw LinkError("realize: core count differs from link");
  const int n = skeleton.vertex_count();
  std::vector<Vec2> lift(n);
  std::vector<int> comp_of(n, -1);
  for (int c = 0; c < skeleton.core_count(); ++c)
    for (int v : skeleton.cores[c]) {
      comp_of[v] = c;
      lift[v] = eval(link, c, param[v]).lift;
    }
  for (int v = 0; v < n; ++v)
    if (comp_of[v] < 0) lift[v] = {interior.at(v)[0], interior.at(v)[1]};

  SurfaceDiagram d = SurfaceDiagram::trivial(skeleton);
  auto round_w = [](double x, double y) {
    return Winding{static_cast<std::int64_t>(std::llround(x)), static_cast<std::int64_t>(std::llround(y))};
  };
  for (int i = 0; i < skeleton.edge_count(); ++i) {
    const auto& e = skeleton.edges[i];
    const Vec2 pa = lift[e.tail], pb = lift[e.head];
    const Vec2 g = displacement(reduce(pa[0], pa[1]), reduce(pb[0], pb[1]));
    d.edge_winding[i] = round_w(pa[0] + g[0] - pb[0], pa[1] + g[1] - pb[1]);
  }
  for (int c = 0; c < skeleton.core_count(); ++c) {
    const auto& word = skeleton.cores[c];
    const auto cls = link.components[c].core_class;
    d.core_class[c] = cls;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const int a = word[i], b = word[(i + 1) % word.size()];
      double sb = param[b];
      while (sb <= param[a]) sb += 1;
      if (word.size() == 1) sb = param[a] + 1;
      // X(s + k) = X(s) + k * class.
      const double turns = std::floor(sb);
      const Vec2 end = eval(link, c, sb - turns).lift;
      const double ex = end[0] + turns * cls.p, ey = end[1] + turns * cls.q;
      d.arc_winding[c][i] = round_w(ex - lift[b][0], ey - lift[b][1]);
    }
  }
  return gauge_fix(d);
}

std::vector<Crossing> crossing_data(const Link& link) {
  constexpr int kSamples = 2048;
  const double ds = 1.0 / kSamples;
  struct Segment {
    double cx, cy, rx, ry;
  };
  std::vector<std::vector<Segment>> segs(link.size());
  for (int c = 0; c < link.size(); ++c) {
    const double bow = curve_curvature_bound(link.components[c]) * ds * ds / 8 + 1e-12;
    for (int k = 0; k < kSamples; ++k) {
      const auto p = eval(link, c, k * ds).lift, q = eval(link, c, (k + 1) * ds).lift;
      segs[c].push_back({(p[0] + q[0]) / 2, (p[1] + q[1]) / 2, std::abs(q[0] - p[0]) / 2 + bow,
                         std::abs(q[1] - p[1]) / 2 + bow});
    }
  }

  std::vector<Crossing> out;
  auto known = [&](int a, double s, int b, double t) {
    for (const auto& x : out)
      if (x.comp_a == a && x.comp_b == b && param_gap(x.s_a, s) < 1e-9 && param_gap(x.s_b, t) < 1e-9) return true;
    return false;
  };
  for (int a = 0; a < link.size(); ++a)
    for (int b = a; b < link.size(); ++b)
      for (int i = 0; i < kSamples; ++i)
        for (int j = (a == b ? i + 2 : 0); j < kSamples; ++j) {
          if (a == b && i == 0 && j == kSamples - 1) continue;
          const auto& u = segs[a][i];
          const auto& v = segs[b][j];
          const Vec2 off = displacement(reduce(u.cx, u.cy), reduce(v.cx, v.cy));
          if (std::abs(off[0]) > u.rx + v.rx || std::abs(off[1]) > u.ry + v.ry) continue;
          // Newton on lift_a(s) - lift_b(t) = K.
          double s = (i + 0.5) * ds, t = (j + 0.5) * ds;
          const auto p0 = eval(link, a, s).lift, q0 = eval(link, b, t).lift;
          const double kx = std::round(p0[0] - q0[0] + off[0]);
          const double ky = std::round(p0[1] - q0[1] + off[1]);
          bool converged = false;
          for (int it = 0; it < 40; ++it) {
            const auto p = eval(link, a, s), q = eval(link, b, t);
            const double fx = p.lift[0] - q.lift[0] - kx, fy = p.lift[1] - q.lift[1] - ky;
            if (std::hypot(fx, fy) < 1e-14) {
              converged = true;
              break;
            }
            const double j11 = p.tangent[0], j12 = -q.tangent[0], j21 = p.tangent[1], j22 = -q.tangent[1];
            const double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-300) break;
            s -= (fx * j22 - fy * j12) / det;
            t -= (-fx * j21 + fy * j11) / det;
            if (std::abs(s - (i + 0.5) * ds) > 4 * ds || std::abs(t - (j + 0.5) * ds) > 4 * ds) break;
          }
          if (!converged) continue;
          s -= std::floor(s);
          t -= std::floor(t);
          if (a == b && param_gap(s, t) < 1e-6) continue;
          int ca = a, cb = b;
          if (a == b && t < s) std::swap(s, t);
          if (known(ca, s, cb, t)) continue;
          const auto p = eval(link, ca, s), q = eval(link, cb, t);
          const double cross = det2(p.tangent, q.tangent);
          if (std::abs(cross) < 1e-9 * norm3(p.tangent) * norm3(q.tangent))
            throw TangentialCrossingError("tangential crossing: " + where(ca, s) + " and " + where(cb, t));
          Crossing x;
          x.comp_a = ca;
          x.s_a = s;
          x.comp_b = cb;
          x.s_b = t;
          const double dh = p.point.h - q.point.h;
          x.sign = std::abs(dh) < 1e-12 ? 0 : (dh > 0 ? 1 : -1) * (cross > 0 ? 1 : -1);
          AbstractDiagram sk = empty_diagram(link.size());
          sk.rotation.assign(2, kNoRotation);
          sk.edges.push_back({0, 1});
          std::vector<double> param{s, t};
          if (ca == cb) {
            sk.cores[ca] = {0, 1};
          } else {
            sk.cores[ca] = {0};
            sk.cores[cb] = {1};
          }
          x.chord = realize(link, sk, param);
          out.push_back(std::move(x));
        }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    return std::tie(x.comp_a, x.comp_b, x.s_a, x.s_b) < std::tie(y.comp_a, y.comp_b, y.s_a, y.s_b);
  });
  return out;
}

RationalSum homotopy_linking(const Link& link, int i, int j) {
  if (i == j) throw std::invalid_argument("homotopy_linking: components must differ");
  RationalSum out;
  for (const auto& x : crossing_data(link)) {
    const bool match = (x.comp_a == i && x.comp_b == j) || (x.comp_a == j && x.comp_b == i);
    if (match && x.sign != 0) out.add(x.chord, Rational(x.sign, 2));
  }
  return out;
}

}  // namespace vassiliev
