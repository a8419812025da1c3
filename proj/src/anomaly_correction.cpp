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
#include <random>

#include "vassiliev/anomaly.hpp"
#include "vassiliev/canon.hpp"
#include "vassiliev/diagram.hpp"

namespace vassiliev {
namespace {

constexpr int kGrid = 4096;
constexpr int kShards = 16;

Vec3 add(const Vec3& a, const Vec3& b, double s = 1) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// The direction track of one component: unit tangents on a grid and the
// constant end direction.
struct Track {
  std::vector<Vec3> tangent;
  Vec3 end{1, 0, 0};
  double angle = 0;
};

double min_norm_on_segment(const Vec3& a, const Vec3& b) {
  const Vec3 d = add(b, a, -1);
  const double dd = dot(d, d);
  const double t = dd > 0 ? std::clamp(-dot(a, d) / dd, 0.0, 1.0) : 0.0;
  return norm(add(a, d, t));
}

bool blocked(const Track& tr, const Vec3& framing, double clearance) {
  const Vec3 f = scale(framing, 1 / norm(framing));
  const double cos_clear = std::cos(clearance);
  constexpr int kSteps = 64;
  for (const auto& t : tr.tangent) {
    if (min_norm_on_segment(t, tr.end) < 1e-3) return true;
    for (int k = 0; k <= kSteps; ++k) {
      const double tau = static_cast<double>(k) / kSteps;
      const Vec3 p = add(scale(t, 1 - tau), tr.end, tau);
      if (dot(p, f) / norm(p) > cos_clear) return true;
    }
  }
  return false;
}

// Signed number of track points over the direction w.
int degree_at(const Track& tr, const Vec3& w) {
  const Vec3 nw = cross(w, tr.end);
  const double len = norm(nw);
  if (len < 1e-12) return 0;
  const Vec3 nh = scale(nw, 1 / len);
  const int m = static_cast<int>(tr.tangent.size());
  int deg = 0;
  for (int k = 0; k < m; ++k) {
    const Vec3& t0 = tr.tangent[k];
    const Vec3& t1 = tr.tangent[(k + 1) % m];
    const double g0 = dot(t0, nh), g1 = dot(t1, nh);
    if ((g0 < 0) == (g1 < 0)) continue;
    const double x = g0 / (g0 - g1);
    Vec3 t = add(scale(t0, 1 - x), t1, x);
    t = scale(t, 1 / norm(t));
    const double c1 = dot(cross(t, w), nh), c2 = dot(cross(tr.end, w), nh);
    if (c1 * c2 > 0 || c1 == c2) continue;
    const double a = c2 / (c2 - c1), b = -c1 / (c2 - c1);
    const Vec3 p = add(scale(t, a), tr.end, b);
    if (dot(p, w) <= 0) continue;
    const Vec3 dt = scale(add(t1, t0, -1), a * m);
    const double j = det3(p, dt, add(tr.end, t, -1));
    deg += j > 0 ? 1 : j < 0 ? -1 : 0;
  }
  return deg;
}

double torus_distance(double x0, double y0, double x1, double y1) {
  double dx = x1 - x0, dy = y1 - y0;
  dx -= std::round(dx);
  dy -= std::round(dy);
  return std::hypot(dx, dy);
}

void check_puncture(const Link& link, const std::array<double, 2>& puncture) {
  for (int c = 0; c < link.size(); ++c) {
    double step = 0;
    double best = 1;
    for (int k = 0; k < kGrid; ++k) {
      const auto a = eval(link, c, static_cast<double>(k) / kGrid).point;
      const auto b = eval(link, c, static_cast<double>(k + 1) / kGrid).point;
      step = std::max(step, torus_distance(a.x, a.y, b.x, b.y));
      best = std::min(best, torus_distance(a.x, a.y, puncture[0], puncture[1]));
    }
    if (best <= step) throw PunctureOnLinkError("correction: puncture lies on the projection of component " +
                                                std::to_string(c));
  }
}

// The single-core anomaly diagram placed on core c of the link.
SurfaceDiagram place(const SurfaceDiagram& one, const Link& link, int c) {
  AbstractDiagram skel = empty_diagram(link.size());
  skel.cores[c] = one.skeleton.cores[0];
  skel.edges = one.skeleton.edges;
  skel.rotation = one.skeleton.rotation;
  SurfaceDiagram d = SurfaceDiagram::trivial(skel);
  for (int k = 0; k < link.size(); ++k) d.core_class[k] = link.components[k].core_class;
  if (!d.arc_winding[c].empty()) d.arc_winding[c].back() = link.components[c].core_class;
  return gauge_fix(d);
}

}  // namespace

nlohmann::json CorrectionResult::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& [key, term] : terms) t.push_back({{"diagram", key}, {"value", term.value + 0.0}, {"std_error", term.std_error}});
  return {{"lift_convention", lift_convention}, {"track_angle", track_angle}, {"terms", t}};
}

CorrectionResult correction(const Link& link, int n, const PropagatorParams& params, const CorrectionOptions& opt) {
  params.validate();
  if (opt.budget < kShards) throw std::invalid_argument("correction: budget smaller than shard count");
  check_puncture(link, opt.puncture);

  CorrectionResult out;
  std::vector<Track> tracks(link.size());
  for (int c = 0; c < link.size(); ++c) {
    Track& tr = tracks[c];
    for (int k = 0; k < kGrid; ++k) {
      const Vec3 t = eval(link, c, static_cast<double>(k) / kGrid).tangent;
      tr.tangent.push_back(scale(t, 1 / norm(t)));
    }
    bool found = false;
    for (int a = 0; a < opt.track_attempts && !found; ++a) {
      tr.angle = 2 * std::numbers::pi * (a + 0.5) / opt.track_attempts;
      tr.end = {std::cos(tr.angle), std::sin(tr.angle), 0};
      found = !blocked(tr, link.framing, opt.framing_clearance);
    }
    if (!found)
      throw HomotopyBlockedError("correction: every direction track of component " + std::to_string(c) +
                                 " meets the framing or the zero vector");
    out.track_angle.push_back(tr.angle);
  }

  // Directions are drawn from an even mixture of the whole sphere and the
  // two vertical caps where the face propagator is supported.
  const double cap = std::atan(params.delta()) * 1.05;
  const double cap_area = 2 * 2 * std::numbers::pi * (1 - std::cos(cap));
  const double sphere_area = 4 * std::numbers::pi;
  auto in_cap = [&](const Vec3& w) { return std::abs(w[2]) >= std::cos(cap); };

  std::map<std::string, SurfaceDiagram> diagrams;
  std::vector<std::map<std::string, double>> shard_sum(kShards);
  std::int64_t per_shard = opt.budget / kShards;
  for (int sh = 0; sh < kShards; ++sh) {
    std::mt19937_64 rng(splitmix64(opt.fiber.seed ^ splitmix64(static_cast<std::uint64_t>(sh) + 0xc0ffeeULL)));
    for (std::int64_t i = 0; i < per_shard; ++i) {
      Vec3 w;
      if (uniform01(rng) < 0.5) {
        const double z = 2 * uniform01(rng) - 1, phi = 2 * std::numbers::pi * uniform01(rng);
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        w = {r * std::cos(phi), r * std::sin(phi), z};
      } else {
        const double z = 1 - uniform01(rng) * (1 - std::cos(cap)), phi = 2 * std::numbers::pi * uniform01(rng);
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        const double side = uniform01(rng) < 0.5 ? 1.0 : -1.0;
        w = {r * std::cos(phi), r * std::sin(phi), side * z};
      }
      const double density = 0.5 / sphere_area + (in_cap(w) ? 0.5 / cap_area : 0.0);

      std::vector<int> deg(link.size());
      bool any = false;
      for (int c = 0; c < link.size(); ++c) {
        deg[c] = degree_at(tracks[c], w);
        any = any || deg[c] != 0;
      }
      if (!any) continue;
      SphereBundlePoint pt;
      pt.v = w;
      for (const auto& [key, val] : omega_n(pt, n, 1, params, opt.fiber)) {
        if (val.value[3][4] == 0) continue;
        for (int c = 0; c < link.size(); ++c) {
          if (deg[c] == 0) continue;
          const auto canon = canonicalize(place(val.diagram, link, c));
          if (canon.sign == 0) continue;
          diagrams.emplace(canon.key, canon.form);
          shard_sum[sh][canon.key] += canon.sign * deg[c] * val.value[3][4] / density;
        }
      }
    }
  }
  for (const auto& [key, d] : diagrams) {
    double mean = 0;
    std::vector<double> means(kShards);
    for (int sh = 0; sh < kShards; ++sh) {
      auto it = shard_sum[sh].find(key);
      means[sh] = it == shard_sum[sh].end() ? 0.0 : it->second / static_cast<double>(per_shard);
      mean += means[sh] / kShards;
    }
    double ss = 0;
    for (double x : means) ss += (x - mean) * (x - mean);
    out.terms[key] = {d, mean, std::sqrt(ss / (kShards * (kShards - 1.0)))};
  }
  return out;
}

}  // namespace vassiliev
