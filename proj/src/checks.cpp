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

#include "vassiliev/checks.hpp"

#include "checks_detail.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "vassiliev/canon.hpp"
#include "vassiliev/enumerate.hpp"
#include "vassiliev/integrator.hpp"

namespace vassiliev {
namespace detail {

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

const Link& first_link(const CheckConfig& c, const std::string& suite) {
  if (c.links.empty()) throw std::invalid_argument(suite + ": the config lists no links");
  return c.links.front();
}

CheckOutcome verdict(std::string name, double measured, double tolerance, std::string detail) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

}  // namespace detail

namespace {

using detail::uniform;
using detail::verdict;

// Draws one parameter per vertex so that every edge lands in a support
// box; nullopt when some edge has no support.
std::optional<std::vector<double>> support_config(const Link& link, const AbstractDiagram& ka,
                                                  const PropagatorParams& params, std::mt19937_64& rng,
                                                  std::map<std::pair<int, int>, std::vector<SupportBox>>& cache) {
  std::vector<double> param(ka.vertex_count(), 0);
  for (const auto& e : ka.edges) {
    const int a = ka.core_position(e.tail).first, b = ka.core_position(e.head).first;
    auto it = cache.find({a, b});
    if (it == cache.end()) it = cache.emplace(std::make_pair(a, b), support_boxes(link, a, b, params)).first;
    const auto& boxes = it->second;
    if (boxes.empty()) return std::nullopt;
    const auto& box = boxes[static_cast<std::size_t>(uniform(rng) * boxes.size()) % boxes.size()];
    param[e.tail] = std::fmod(box.s0 + uniform(rng) * box.ls, 1.0);
    param[e.head] = std::fmod(box.t0 + uniform(rng) * box.lt, 1.0);
  }
  return param;
}

SurfaceDiagram swap_cores(const SurfaceDiagram& d, int a, int b) {
  SurfaceDiagram out = d;
  std::swap(out.skeleton.cores[a], out.skeleton.cores[b]);
  std::swap(out.arc_winding[a], out.arc_winding[b]);
  std::swap(out.core_class[a], out.core_class[b]);
  return out;
}

struct Variant {
  std::string family;
  AbstractDiagram diagram;
  std::vector<double> param;
  bool swapped = false;
};

std::vector<Variant> variants(const AbstractDiagram& ka, const std::vector<double>& param, std::mt19937_64& rng) {
  std::vector<Variant> out;
  for (int k = 0; k < ka.edge_count(); ++k) {
    Variant v{"edge orientation", ka, param};
    std::swap(v.diagram.edges[k].tail, v.diagram.edges[k].head);
    out.push_back(std::move(v));
  }
  {
    Variant v{"edge order", ka, param};
    std::reverse(v.diagram.edges.begin(), v.diagram.edges.end());
    out.push_back(std::move(v));
  }
  {
    std::vector<int> label(ka.vertex_count());
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    int flips = 0;
    Variant v{"vertex order", relabel(ka, label, &flips), std::vector<double>(param.size())};
    for (std::size_t i = 0; i < label.size(); ++i) v.param[label[i]] = param[i];
    out.push_back(std::move(v));
  }
  if (ka.core_count() == 2) {
    Variant v{"component order", ka, param, true};
    std::swap(v.diagram.cores[0], v.diagram.cores[1]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<CheckOutcome> orderings(const CheckConfig& c) {
  const Link& link = detail::first_link(c, "orderings");
  Link swapped = link;
  if (link.size() == 2) std::swap(swapped.components[0], swapped.components[1]);
  const PropagatorParams params = c.invariant.params();
  std::mt19937_64 rng(c.seed);
  std::map<std::pair<int, int>, std::vector<SupportBox>> cache;

  std::map<std::string, double> worst;
  std::map<std::string, int> mismatched, compared;
  for (int n = 1; n <= std::max(1, c.invariant.degree); ++n)
    for (const auto& ka : enumerate(n, link.size())) {
      if (!ka.is_chord_diagram()) continue;
      for (int p = 0; p < c.points; ++p) {
        const auto param = support_config(link, ka, params, rng, cache);
        if (!param) break;
        const auto base = integrand(ka, {*param, {}}, link, params);
        const auto base_class = base.zero ? CanonicalSurface{} : canonicalize(base.diagram);
        for (const auto& v : variants(ka, *param, rng)) {
          const auto val = integrand(v.diagram, {v.param, {}}, v.swapped ? swapped : link, params);
          const double dev = std::abs(val.value - base.value) / std::max(1.0, std::abs(base.value));
          worst[v.family] = std::max(worst[v.family], dev);
          ++compared[v.family];
          if (val.zero != base.zero) {
            ++mismatched[v.family];
            continue;
          }
          if (base.zero) continue;
          const auto cls = canonicalize(v.swapped ? swap_cores(val.diagram, 0, 1) : val.diagram);
          if (cls.key != base_class.key || cls.sign != base_class.sign) ++mismatched[v.family];
        }
      }
    }
  std::vector<CheckOutcome> out;
  for (const auto& [family, dev] : worst) {
    auto o = verdict("integrand invariant under " + family, dev, c.relative_tol,
                     std::to_string(compared[family]) + " configurations, " + std::to_string(mismatched[family]) +
                         " class mismatches");
    o.pass = o.pass && mismatched[family] == 0;
    out.push_back(std::move(o));
  }

  // The estimator itself: relabeled inputs and worker counts.
  EstimateOptions eo;
  eo.budget = 4096;
  eo.seed = c.seed;
  eo.shards = 16;
  int differing = 0, runs = 0;
  for (int n = 1; n <= std::max(1, c.invariant.degree); ++n)
    for (const auto& ka : enumerate(n, link.size())) {
      if (!ka.is_chord_diagram()) continue;
      const auto ref = estimate(link, ka, params, eo).to_json().dump();
      std::vector<int> label(ka.vertex_count());
      std::iota(label.rbegin(), label.rend(), 0);
      int flips = 0;
      AbstractDiagram relabeled = relabel(ka, label, &flips);
      for (auto& e : relabeled.edges) std::swap(e.tail, e.head);
      EstimateOptions threaded = eo;
      threaded.workers = 3;
      differing += estimate(link, relabeled, params, eo).to_json().dump() != ref;
      differing += estimate(link, ka, params, threaded).to_json().dump() != ref;
      runs += 2;
    }
  out.push_back(verdict("estimate identical under relabeling and worker count", differing, 0,
                        std::to_string(runs) + " runs compared byte for byte"));
  return out;
}

std::vector<CheckOutcome> antisymmetry(const CheckConfig& c) {
  const PropagatorParams params = c.invariant.params();
  std::mt19937_64 rng(c.seed);
  const double r0 = params.r0(), delta = params.delta();

  double worst = 0, scale = 0;
  int pairs = 0;
  for (int i = 0; i < c.points; ++i) {
    const double rad = r0 * std::sqrt(uniform(rng)), ang = 2 * std::numbers::pi * uniform(rng);
    const MPoint x{uniform(rng), uniform(rng), 0.2 + 0.3 * uniform(rng)};
    const MPoint y{x.x + rad * std::cos(ang), x.y + rad * std::sin(ang),
                   x.h + (uniform(rng) < 0.5 ? -1 : 1) * (delta * (1 + uniform(rng)))};
    const MPoint yr{y.x - std::floor(y.x), y.y - std::floor(y.y), y.h};
    const TwoForm a = omega(x, yr, params), b = omega(yr, x, params);
    for (int r = 0; r < 6; ++r)
      for (int s = 0; s < 6; ++s) {
        worst = std::max(worst, std::abs(a[r][s] + b[(r + 3) % 6][(s + 3) % 6]));
        scale = std::max(scale, std::abs(a[r][s]));
      }
    ++pairs;
  }
  std::vector<CheckOutcome> out;
  out.push_back(verdict("propagator odd under exchange", worst / std::max(scale, 1.0), c.relative_tol,
                        std::to_string(pairs) + " pairs in the support"));

  if (!c.links.empty()) {
    const Link& link = c.links.front();
    std::map<std::pair<int, int>, std::vector<SupportBox>> cache;
    double dev = 0;
    int evaluated = 0, class_changes = 0;
    for (const auto& ka : enumerate(1, link.size()))
      for (int p = 0; p < c.points; ++p) {
        const auto param = support_config(link, ka, params, rng, cache);
        if (!param) break;
        AbstractDiagram flipped = ka;
        std::swap(flipped.edges[0].tail, flipped.edges[0].head);
        const auto a = integrand(ka, {*param, {}}, link, params), b = integrand(flipped, {*param, {}}, link, params);
        dev = std::max(dev, std::abs(a.form_value + b.form_value) / std::max(1.0, std::abs(a.form_value)));
        if (!a.zero && canonicalize(a.diagram).key != canonicalize(b.diagram).key) ++class_changes;
        ++evaluated;
      }
    auto o = verdict("edge flip negates the form value", dev, c.relative_tol,
                     std::to_string(evaluated) + " configurations, " + std::to_string(class_changes) + " class changes");
    o.pass = o.pass && class_changes == 0;
    out.push_back(std::move(o));
  }

  // Reversing the cyclic order at an internal vertex negates the class.
  int bad = 0, checked = 0;
  for (int l = 1; l <= 2; ++l)
    for (const auto& ka : enumerate(2, l))
      for (int v = 0; v < ka.vertex_count(); ++v) {
        if (ka.is_external(v)) continue;
        SurfaceDiagram d = SurfaceDiagram::trivial(ka), r = d;
        std::swap(r.skeleton.rotation[v][1], r.skeleton.rotation[v][2]);
        const auto cd = canonicalize(d), cr = canonicalize(r);
        bad += !(cd.key == cr.key && cd.sign == -cr.sign);
        ++checked;
      }
  out.push_back(verdict("vertex reversal negates the class", bad, 0, std::to_string(checked) + " vertices"));
  return out;
}

}  // namespace

nlohmann::json CheckOutcome::to_json() const {
  return {{"name", name}, {"pass", pass}, {"measured", measured}, {"tolerance", tolerance}, {"detail", detail}};
}

CheckConfig check_config_from_json(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("check config: expected an object");
  static const std::set<std::string> keys{"links", "pairs", "singular", "invariant",
                                          "sigma", "relative_tol", "points", "seed"};
  for (const auto& [k, v] : j.items())
    if (!keys.contains(k)) throw std::invalid_argument("check config: unknown key '" + k + "'");
  auto load = [&](const nlohmann::json& p) {
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    return load_link(path.string());
  };
  CheckConfig c;
  for (const auto& p : j.value("links", nlohmann::json::array())) c.links.push_back(load(p));
  for (const auto& p : j.value("pairs", nlohmann::json::array())) c.pairs.emplace_back(load(p.at(0)), load(p.at(1)));
  for (const auto& p : j.value("singular", nlohmann::json::array())) c.singular.push_back(load(p));
  c.invariant = options_from_json(j.value("invariant", nlohmann::json::object()), Link{});
  c.sigma = j.value("sigma", c.sigma);
  c.relative_tol = j.value("relative_tol", c.relative_tol);
  c.points = j.value("points", c.points);
  c.seed = j.value("seed", c.seed);
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"orderings",    "antisymmetry",  "finite-type",
                                              "universality", "isotopy",       "anomaly-closed",
                                              "correction-independence"};
  return names;
}

std::vector<CheckOutcome> run_suite(const std::string& suite, const CheckConfig& config) {
  if (suite == "orderings") return orderings(config);
  if (suite == "antisymmetry") return antisymmetry(config);
  if (suite == "finite-type") return detail::finite_type(config);
  if (suite == "universality") return detail::universality(config);
  if (suite == "isotopy") return detail::isotopy(config);
  if (suite == "anomaly-closed") return detail::anomaly_closed(config);
  if (suite == "correction-independence") return detail::correction_independence(config);
  throw UnknownSuiteError("unknown suite '" + suite + "'");
}

bool agree(double a, double sa, double b, double sb, double sigma) {
  const double se = std::hypot(sa, sb);
  return se == 0 ? std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)) : std::abs(a - b) <= sigma * se;
}

std::pair<double, bool> max_deviation(const InvariantResult& a, const InvariantResult& b) {
  if (a.degrees.size() != b.degrees.size()) return {0, false};
  double worst = 0;
  for (std::size_t n = 0; n < a.degrees.size(); ++n) {
    const auto& ca = a.degrees[n].coordinates;
    const auto& cb = b.degrees[n].coordinates;
    if (ca.size() != cb.size()) return {worst, false};
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i].generator != cb[i].generator) return {worst, false};
      const double se = std::hypot(ca[i].std_error, cb[i].std_error);
      const double diff = std::abs(ca[i].value - cb[i].value);
      if (se > 0)
        worst = std::max(worst, diff / se);
      else if (diff > 1e-12 * std::max(1.0, std::abs(ca[i].value)))
        worst = std::numeric_limits<double>::infinity();
    }
  }
  return {worst, true};
}

}  // namespace vassiliev
