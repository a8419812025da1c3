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

#include "vassiliev/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "vassiliev/canon.hpp"
#include "vassiliev/collapse.hpp"
#include "vassiliev/enumerate.hpp"
#include "vassiliev/forms.hpp"

namespace vassiliev {
namespace {

Vec3 add(const Vec3& a, const Vec3& b, double s = 1) { return {a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec3 normalized(const Vec3& a) { return scale(a, 1 / std::sqrt(dot(a, a))); }

double sphere_area(int k) {
  return 2 * std::pow(std::numbers::pi, (k + 1) / 2.0) / std::tgamma((k + 1) / 2.0);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Row-wise Gram-Schmidt; drops vectors that become dependent.
std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& in,
                                                std::vector<std::vector<double>> basis = {}) {
  const std::size_t fixed = basis.size();
  for (auto v : in) {
    for (const auto& b : basis) {
      double p = 0;
      for (std::size_t i = 0; i < v.size(); ++i) p += v[i] * b[i];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * b[i];
    }
    double nn = 0;
    for (double x : v) nn += x * x;
    if (nn < 1e-20) continue;
    for (double& x : v) x /= std::sqrt(nn);
    basis.push_back(std::move(v));
  }
  basis.erase(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(fixed));
  return basis;
}

double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Layout of the collision parameters of T.
struct FiberLayout {
  std::vector<int> T;
  std::vector<bool> univalent;  // per T entry
  std::vector<int> offset;      // first coordinate per T entry
  std::vector<int> along;       // coordinates measured along v
  int m = 0;
};

FiberLayout layout(const AbstractDiagram& ka, const std::vector<int>& T) {
  FiberLayout l;
  l.T = T;
  for (int v : T) {
    const bool uni = ka.is_external(v);
    l.univalent.push_back(uni);
    l.offset.push_back(l.m);
    l.along.push_back(l.m);
    l.m += uni ? 1 : 3;
  }
  return l;
}

// Positions of T's vertices as a linear function of the coordinates, and
// their derivatives under rotation of the frame.
struct Frame3 {
  Vec3 v, f1, f2;
};

std::vector<Vec3> positions(const FiberLayout& l, const Frame3& fr, const std::vector<double>& c) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < l.T.size(); ++i) {
    const int o = l.offset[i];
    if (l.univalent[i])
      out.push_back(scale(fr.v, c[o]));
    else
      out.push_back(add(add(scale(fr.v, c[o]), fr.f1, c[o + 1]), fr.f2, c[o + 2]));
  }
  return out;
}

// d/dt of positions when v turns towards f1 (which = 0) or f2 (which = 1).
std::vector<Vec3> rotated(const FiberLayout& l, const Frame3& fr, const std::vector<double>& c, int which) {
  const Vec3& f = which == 0 ? fr.f1 : fr.f2;
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < l.T.size(); ++i) {
    const int o = l.offset[i];
    Vec3 d = scale(f, c[o]);
    if (!l.univalent[i]) d = add(d, fr.v, -c[o + 1 + which]);
    out.push_back(d);
  }
  return out;
}

std::vector<double> project_hyperplane(const FiberLayout& l, std::vector<double> c) {
  double mean = 0;
  for (int i : l.along) mean += c[i];
  mean /= static_cast<double>(l.along.size());
  for (int i : l.along) c[i] -= mean;
  return c;
}

struct FiberSample {
  double value = 0;      // the product form on (fiber frame, rot f1, rot f2)
  double magnitude = 0;
};

FiberSample evaluate(const AbstractDiagram& ka, const FiberLayout& l, const Frame3& fr, const std::vector<double>& y,
                     const std::vector<std::vector<double>>& tangent, const PropagatorParams& params) {
  std::vector<int> index(ka.vertex_count(), -1);
  for (std::size_t i = 0; i < l.T.size(); ++i) index[l.T[i]] = static_cast<int>(i);
  const auto pos = positions(l, fr, y);
  std::vector<std::vector<Vec3>> moves;
  for (const auto& t : tangent) moves.push_back(positions(l, fr, t));
  moves.push_back(rotated(l, fr, y, 0));
  moves.push_back(rotated(l, fr, y, 1));

  const int e = ka.edge_count();
  const int dim = static_cast<int>(moves.size());
  std::vector<std::vector<std::vector<double>>> w(e, std::vector<std::vector<double>>(dim, std::vector<double>(dim, 0)));
  for (int k = 0; k < e; ++k) {
    const int a = index[ka.edges[k].tail], b = index[ka.edges[k].head];
    const Vec3 d = add(pos[b], pos[a], -1);
    bool any = false;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        const double x = face_propagator(d, add(moves[i][b], moves[i][a], -1), add(moves[j][b], moves[j][a], -1), params);
        w[k][i][j] = x;
        w[k][j][i] = -x;
        any = any || x != 0;
      }
    if (!any) return {};
  }
  FiberSample s;
  s.value = wedge_value(w, &s.magnitude);
  return s;
}

}  // namespace

std::array<Vec3, 2> sphere_frame(const Vec3& v) {
  const Vec3 u = normalized(v);
  const Vec3 ref = std::abs(u[2]) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  const Vec3 f1 = normalized(cross(ref, u));
  return {f1, cross(u, f1)};
}

double face_propagator(const Vec3& d, const Vec3& a, const Vec3& b, const PropagatorParams& params) {
  const double dh = d[2];
  if (dh == 0) return 0;
  const double delta = params.delta();
  const double inv = 1 / std::abs(dh);
  const Vec2 g{delta * d[0] * inv, delta * d[1] * inv};
  const double rho = thom_density(g, params);
  if (rho == 0) return 0;
  const double sg = dh > 0 ? 1.0 : -1.0;
  auto push = [&](const Vec3& x) {
    return Vec2{delta * inv * x[0] - delta * d[0] * sg * inv * inv * x[2],
                delta * inv * x[1] - delta * d[1] * sg * inv * inv * x[2]};
  };
  const Vec2 ga = push(a), gb = push(b);
  return -sg * rho * (ga[0] * gb[1] - ga[1] * gb[0]);
}

int fiber_dimension(const AbstractDiagram& ka, const std::vector<int>& T) {
  int tu = 0;
  for (int v : T) tu += ka.is_external(v);
  return 3 * (ka.external_count() + ka.internal_count() + 1) - 2 * tu - 5;
}

AnomalyFiberPoint fiber_point(const AbstractDiagram& ka, const std::vector<int>& T, const Vec3& v,
                              std::vector<double> coords) {
  const FiberLayout l = layout(ka, T);
  if (static_cast<int>(coords.size()) != l.m) throw std::invalid_argument("fiber_point: wrong coordinate count");
  coords = project_hyperplane(l, std::move(coords));
  double nn = 0;
  for (double x : coords) nn += x * x;
  if (nn == 0) throw std::invalid_argument("fiber_point: degenerate coordinates");
  for (double& x : coords) x /= std::sqrt(nn);
  const auto f = sphere_frame(v);
  AnomalyFiberPoint p;
  p.position = positions(l, {normalized(v), f[0], f[1]}, coords);
  p.coords = std::move(coords);
  return p;
}

AnomalyValue omega_T(const SphereBundlePoint& point, const AbstractDiagram& ka, const std::vector<int>& T,
                     const PropagatorParams& params, const AnomalyOptions& opt) {
  if (classify_face(ka, T) != FaceLabel::kAnomalous) throw NotAnomalousError("omega_T: face is not anomalous");
  params.validate();
  AnomalyValue out;
  out.diagram = SurfaceDiagram::trivial(ka);
  const int e = ka.edge_count();
  // Vertices outside T stay free in M: the fiber exceeds the form degree.
  if (fiber_dimension(ka, T) != 2 * e - 2) return out;

  const FiberLayout l = layout(ka, T);
  const auto f = sphere_frame(point.v);
  const Frame3 fr{normalized(point.v), f[0], f[1]};
  const double aut = static_cast<double>(automorphism_orders(ka).all);

  // Orthonormal basis of the parameter hyperplane.
  std::vector<std::vector<double>> unit;
  for (int i = 0; i < l.m; ++i) {
    std::vector<double> x(l.m, 0);
    x[i] = 1;
    unit.push_back(project_hyperplane(l, x));
  }
  const auto hyper = orthonormalize(unit);
  const int k = static_cast<int>(hyper.size()) - 1;  // sphere dimension

  auto to_ambient = [&](const std::vector<double>& coef) {
    std::vector<double> x(l.m, 0);
    for (std::size_t r = 0; r < hyper.size(); ++r)
      for (int i = 0; i < l.m; ++i) x[i] += coef[r] * hyper[r][i];
    return x;
  };
  // Oriented tangent frame of the unit sphere at yh (hyperplane coordinates).
  auto tangent_frame = [&](const std::vector<double>& yh) {
    std::vector<std::vector<double>> id;
    for (std::size_t r = 0; r < yh.size(); ++r) {
      std::vector<double> x(yh.size(), 0);
      x[r] = 1;
      id.push_back(x);
    }
    auto t = orthonormalize(id, {yh});
    t.resize(static_cast<std::size_t>(k));
    std::vector<std::vector<double>> m{yh};
    for (const auto& r : t) m.push_back(r);
    if (determinant(m) < 0 && !t.empty()) for (double& x : t[0]) x = -x;
    std::vector<std::vector<double>> amb;
    for (const auto& r : t) amb.push_back(to_ambient(r));
    return amb;
  };

  auto record = [&](TwoForm5& form, double x) {
    form[3][4] += x;
    form[4][3] -= x;
  };

  if (k == 0) {
    for (double sgn : {1.0, -1.0}) {
      const auto s = evaluate(ka, l, fr, to_ambient({sgn}), {}, params);
      record(out.value, sgn * s.value / aut);
      out.magnitude += s.magnitude / aut;
    }
    return out;
  }

  const double area = sphere_area(k);
  std::vector<double> shard_mean(opt.shards, 0);
  double magnitude = 0;
  for (int sh = 0; sh < opt.shards; ++sh) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(static_cast<std::uint64_t>(sh) + 0x51ed2701ULL)));
    std::normal_distribution<double> normal;
    const std::int64_t count = std::max<std::int64_t>(1, opt.budget / opt.shards);
    double sum = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<double> yh(hyper.size());
      double nn = 0;
      for (double& x : yh) {
        x = normal(rng);
        nn += x * x;
      }
      for (double& x : yh) x /= std::sqrt(nn);
      const auto s = evaluate(ka, l, fr, to_ambient(yh), tangent_frame(yh), params);
      sum += s.value;
      magnitude += s.magnitude;
    }
    shard_mean[sh] = area * sum / static_cast<double>(count) / aut;
  }
  double mean = 0;
  for (double x : shard_mean) mean += x;
  mean /= opt.shards;
  double ss = 0;
  for (double x : shard_mean) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (opt.shards * (opt.shards - 1.0)));
  record(out.value, mean);
  out.std_error[3][4] = out.std_error[4][3] = se;
  out.magnitude = area * magnitude / static_cast<double>(opt.shards * std::max<std::int64_t>(1, opt.budget / opt.shards)) / aut;
  return out;
}

std::map<std::string, AnomalyValue> omega_n(const SphereBundlePoint& v, int n, int l, const PropagatorParams& params,
                                            const AnomalyOptions& opt) {
  std::map<std::string, AnomalyValue> out;
  std::uint64_t salt = 0;
  for (const auto& ka : enumerate(n, l)) {
    for (const auto& comp : graph_components(ka)) {
      ++salt;
      if (comp.size() < 2 || classify_face(ka, comp) != FaceLabel::kAnomalous) continue;
      std::set<int> cores;
      for (int x : comp)
        if (ka.is_external(x)) cores.insert(ka.core_position(x).first);
      if (cores.size() > 1) continue;
      AnomalyOptions o = opt;
      o.seed = splitmix64(opt.seed ^ salt);
      const AnomalyValue val = omega_T(v, ka, comp, params, o);
      const auto canon = canonicalize(val.diagram);
      auto [it, fresh] = out.try_emplace(canon.key);
      if (fresh) it->second.diagram = canon.form;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          it->second.value[i][j] += canon.sign * val.value[i][j];
          it->second.std_error[i][j] = std::hypot(it->second.std_error[i][j], val.std_error[i][j]);
        }
      it->second.magnitude += val.magnitude;
    }
  }
  return out;
}

ClosednessResult closedness(const SphereBundlePoint& v, int n, int l, std::array<int, 3> directions, double h,
                            const PropagatorParams& params, const AnomalyOptions& opt) {
  for (int d : directions)
    if (d < 0 || d > 4) throw std::invalid_argument("closedness: direction out of range");
  if (directions[0] == directions[1] || directions[1] == directions[2] || directions[0] == directions[2])
    throw std::invalid_argument("closedness: directions must differ");
  const Vec3 v0 = normalized(v.v);
  const auto f0 = sphere_frame(v0);

  // Chart (b0, b1, b2, a1, a2) -> (base + b, normalize(v0 + a1 f1 + a2 f2)).
  auto chart_vectors = [&](const std::array<double, 5>& x) {
    const Vec3 w = add(add(v0, f0[0], x[3]), f0[1], x[4]);
    const double r = std::sqrt(dot(w, w));
    const Vec3 u = scale(w, 1 / r);
    const auto f = sphere_frame(u);
    std::array<std::array<double, 5>, 5> cols{};
    for (int i = 0; i < 3; ++i) cols[i][i] = 1;
    for (int a = 0; a < 2; ++a) {
      const Vec3& dir = f0[a];
      const Vec3 du = scale(add(dir, u, -dot(dir, u)), 1 / r);
      cols[3 + a][3] = dot(du, f[0]);
      cols[3 + a][4] = dot(du, f[1]);
    }
    return std::make_pair(u, cols);
  };

  std::map<std::string, double> flux, var;
  double magnitude = 0;
  const double node = h / std::sqrt(3.0);
  for (int face = 0; face < 3; ++face) {
    const int normal = directions[face];
    const int p = directions[(face + 1) % 3], q = directions[(face + 2) % 3];
    for (double side : {1.0, -1.0}) {
      for (double sp : {-node, node})
        for (double sq : {-node, node}) {
          std::array<double, 5> x{};
          x[normal] = side * h;
          x[p] = sp;
          x[q] = sq;
          const auto [u, cols] = chart_vectors(x);
          SphereBundlePoint pt{v.base, u};
          pt.base.x += x[0];
          pt.base.y += x[1];
          pt.base.h += x[2];
          for (const auto& [key, val] : omega_n(pt, n, l, params, opt)) {
            double w = 0, se = 0;
            for (int i = 0; i < 5; ++i)
              for (int j = 0; j < 5; ++j) {
                const double c = cols[p][i] * cols[q][j];
                w += val.value[i][j] * c;
                se += val.std_error[i][j] * std::abs(c);
              }
            flux[key] += side * h * h * w;
            var[key] += h * h * h * h * se * se;
            magnitude += h * h * val.magnitude;
          }
        }
    }
  }
  ClosednessResult out;
  out.magnitude = magnitude;
  for (const auto& [key, f] : flux)
    if (std::abs(f) >= std::abs(out.flux)) {
      out.flux = f;
      out.std_error = std::sqrt(var[key]);
    }
  return out;
}

}  // namespace vassiliev
