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
#include <limits>
#include <numbers>

#include "checks_detail.hpp"
#include "vassiliev/anomaly.hpp"
#include "vassiliev/relations.hpp"

namespace vassiliev::detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double standardized(double diff, double se) {
  if (se > 0) return std::abs(diff) / se;
  return std::abs(diff) <= 1e-12 ? 0.0 : kInf;
}

// Runs every link with one quotient window per degree, widening and
// rerunning when the first pass disagrees.
std::vector<InvariantResult> run_common(const std::vector<Link>& links, InvariantOptions opt) {
  std::vector<InvariantResult> out;
  for (int pass = 0; pass < 2; ++pass) {
    out.clear();
    for (const auto& l : links) out.push_back(assemble_V(l, opt));
    int lo = std::numeric_limits<int>::max(), hi = 0;
    for (const auto& r : out)
      for (const auto& d : r.degrees)
        if (d.degree > 0) {
          lo = std::min(lo, d.window_radius);
          hi = std::max(hi, d.window_radius);
        }
    if (lo >= hi) break;
    opt.min_window_radius = hi;
  }
  return out;
}

struct AlternatingSum {
  int k = 0;
  std::vector<std::vector<Coordinate>> degrees;  // summed coordinates per degree
  std::vector<int> radius;
};

AlternatingSum alternating(const Link& singular, InvariantOptions opt) {
  AlternatingSum s;
  s.k = static_cast<int>(singular.double_points.size());
  opt.degree = std::min(2, std::max(opt.degree, s.k));
  const auto res = resolutions(singular);
  std::vector<Link> links;
  for (const auto& r : res) links.push_back(r.link);
  const auto runs = run_common(links, opt);
  for (std::size_t n = 0; n < runs.front().degrees.size(); ++n) {
    std::vector<Coordinate> sum = runs.front().degrees[n].coordinates;
    for (auto& c : sum) c.value = c.std_error = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& coords = runs[r].degrees[n].coordinates;
      if (coords.size() != sum.size()) throw std::runtime_error("alternating sum: resolutions use different bases");
      for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i].value += res[r].sign * coords[i].value;
        sum[i].std_error = std::hypot(sum[i].std_error, coords[i].std_error);
      }
    }
    s.degrees.push_back(std::move(sum));
    s.radius.push_back(runs.front().degrees[n].window_radius);
  }
  return s;
}

// The chord diagram of a singular link: one chord per double point.
SurfaceDiagram singular_chords(const Link& link) {
  std::vector<std::vector<std::pair<double, int>>> occ(link.size());
  for (std::size_t i = 0; i < link.double_points.size(); ++i) {
    const auto& dp = link.double_points[i];
    occ[dp.comp_a].push_back({dp.s_a, static_cast<int>(i)});
    occ[dp.comp_b].push_back({dp.s_b, static_cast<int>(i)});
  }
  std::vector<std::vector<int>> words;
  std::vector<double> param;
  for (auto& o : occ) {
    std::sort(o.begin(), o.end());
    words.emplace_back();
    for (const auto& [s, label] : o) {
      words.back().push_back(label);
      param.push_back(s);
    }
  }
  return realize(link, chord_diagram(words), param);
}

std::string pair_name(const Link& a, const Link& b) { return a.name + " vs " + b.name; }

}  // namespace

std::vector<CheckOutcome> finite_type(const CheckConfig& c) {
  if (c.singular.empty()) throw std::invalid_argument("finite-type: the config lists no singular links");
  std::vector<CheckOutcome> out;
  for (const auto& link : c.singular) {
    const auto s = alternating(link, c.invariant);
    double worst = 0;
    int coords = 0;
    for (int n = 0; n < std::min<int>(s.k, static_cast<int>(s.degrees.size())); ++n)
      for (const auto& x : s.degrees[n]) {
        worst = std::max(worst, standardized(x.value, x.std_error));
        ++coords;
      }
    out.push_back(verdict("alternating sum vanishes below degree " + std::to_string(s.k) + " (" + link.name + ")",
                          worst, c.sigma, std::to_string(coords) + " coordinates, measured in standard errors"));
  }
  return out;
}

std::vector<CheckOutcome> universality(const CheckConfig& c) {
  if (c.singular.empty()) throw std::invalid_argument("universality: the config lists no singular links");
  std::vector<CheckOutcome> out;
  for (const auto& link : c.singular) {
    const auto s = alternating(link, c.invariant);
    if (s.k >= static_cast<int>(s.degrees.size())) {
      out.push_back({"degree " + std::to_string(s.k) + " leading term (" + link.name + ")", false, kInf, c.sigma,
                     "degree beyond the integration cutoff"});
      continue;
    }
    WindingWindow w;
    w.core_classes.clear();
    for (const auto& comp : link.components) w.core_classes.push_back(comp.core_class);
    w.radius = s.radius[s.k];
    const auto expected = normal_form(RationalSum(singular_chords(link)), relation_basis(s.k, w));
    double worst = 0, lead = 0, lead_se = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const double e = static_cast<double>(expected[i]);
      const auto& x = s.degrees[s.k][i];
      worst = std::max(worst, standardized(x.value - e, x.std_error));
      if (e != 0 && lead == 0) {
        lead = x.value / e;
        lead_se = x.std_error / std::abs(e);
      }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "leading coefficient %.4f +- %.4f; worst coordinate in standard errors", lead,
                  lead_se);
    out.push_back(verdict("degree-" + std::to_string(s.k) + " alternating sum equals the singular chord diagram (" +
                              link.name + ")",
                          worst, c.sigma, buf));
  }
  return out;
}

std::vector<CheckOutcome> isotopy(const CheckConfig& c) {
  if (c.pairs.empty()) throw std::invalid_argument("isotopy: the config lists no pairs");
  std::vector<CheckOutcome> out;
  for (const auto& [a, b] : c.pairs) {
    const auto runs = run_common({a, b}, c.invariant);
    const auto [dev, same] = max_deviation(runs[0], runs[1]);
    auto o = verdict("invariant agrees on " + pair_name(a, b), dev, c.sigma,
                     same ? "largest coordinate difference in combined standard errors" : "bases differ");
    o.pass = o.pass && same;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<CheckOutcome> anomaly_closed(const CheckConfig& c) {
  const PropagatorParams params = c.invariant.params();
  const double cone = std::atan(params.delta());
  std::mt19937_64 rng(c.seed);
  AnomalyOptions fiber;
  fiber.seed = c.seed;
  std::vector<CheckOutcome> out;

  double worst = 0, worst_outside = 0;
  for (int i = 0; i < c.points; ++i) {
    const double theta = i % 2 ? std::acos(2 * uniform(rng) - 1) : cone * 1.2 * uniform(rng);
    const double phi = 2 * std::numbers::pi * uniform(rng);
    SphereBundlePoint p;
    p.v = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    double here = 0;
    for (const auto& [key, v] : omega_n(p, 1, 1, params, fiber)) here = std::max(here, std::abs(v.value[3][4]));
    worst = std::max(worst, here);
    const double off_vertical = std::min(theta, std::numbers::pi - theta);
    if (off_vertical > cone * 1.01) worst_outside = std::max(worst_outside, here);
  }
  out.push_back(verdict("omega_1 vanishes", worst, c.relative_tol,
                        "largest |omega_1| over " + std::to_string(c.points) + " directions"));
  out.push_back(verdict("omega_1 vanishes outside the vertical cone", worst_outside, c.relative_tol,
                        "cone half-angle " + std::to_string(cone) + " rad"));

  AnomalyOptions small = fiber;
  small.budget = 1000;
  double ratio = 0;
  for (double theta : {0.0, 0.3 * cone, 0.8 * cone, 0.5, 1.2, std::numbers::pi / 2}) {
    SphereBundlePoint p;
    p.v = {std::sin(theta), 0, std::cos(theta)};
    for (const auto& [key, v] : omega_n(p, 2, 1, params, small))
      if (v.magnitude > 0) ratio = std::max(ratio, std::abs(v.value[3][4]) / v.magnitude);
  }
  out.push_back(verdict("omega_2 vanishes relative to its integrand", ratio, c.relative_tol, "six directions"));

  small.budget = 500;
  SphereBundlePoint base;
  base.v = {std::sin(0.3 * cone), 0.1 * cone, std::cos(0.3 * cone)};
  for (int n : {1, 2})
    for (const auto& cell : {std::array<int, 3>{0, 3, 4}, std::array<int, 3>{2, 3, 4}}) {
      const auto r = closedness(base, n, 1, cell, 0.2 * params.delta(), params, small);
      const double tol = c.sigma * r.std_error + c.relative_tol * r.magnitude;
      auto o = verdict("omega_" + std::to_string(n) + " closed on cell (" + std::to_string(cell[0]) + "," +
                           std::to_string(cell[1]) + "," + std::to_string(cell[2]) + ")",
                       std::abs(r.flux), tol, "boundary flux against combined tolerance");
      out.push_back(std::move(o));
    }
  return out;
}

std::vector<CheckOutcome> correction_independence(const CheckConfig& c) {
  const Link& link = first_link(c, "correction-independence");
  const PropagatorParams params = c.invariant.params();
  std::vector<CheckOutcome> out;

  auto run = [&](const Link& l, std::array<double, 2> puncture, int n) {
    CorrectionOptions o = c.invariant.correction;
    o.puncture = puncture;
    o.budget = c.invariant.correction_budget_for(n);
    o.fiber.seed = c.seed;
    return correction(l, n, params, o);
  };
  auto compare = [&](const CorrectionResult& a, const CorrectionResult& b) {
    std::map<std::string, std::pair<const CorrectionTerm*, const CorrectionTerm*>> keys;
    for (const auto& [k, t] : a.terms) keys[k].first = &t;
    for (const auto& [k, t] : b.terms) keys[k].second = &t;
    double worst = 0;
    for (const auto& [k, p] : keys) {
      const double va = p.first ? p.first->value : 0, sa = p.first ? p.first->std_error : 0;
      const double vb = p.second ? p.second->value : 0, sb = p.second ? p.second->std_error : 0;
      worst = std::max(worst, standardized(va - vb, std::hypot(sa, sb)));
    }
    return worst;
  };

  // Two punctures off the projection, far apart.
  std::vector<std::array<double, 2>> punctures;
  for (int i = 0; i < 7 && punctures.size() < 2; ++i)
    for (int j = 0; j < 7 && punctures.size() < 2; ++j) {
      const std::array<double, 2> x{(i + 0.31) / 7, (j + 0.57) / 7};
      if (!punctures.empty() && std::hypot(x[0] - punctures[0][0], x[1] - punctures[0][1]) < 0.3) continue;
      try {
        run(link, x, 1);
        punctures.push_back(x);
      } catch (const PunctureOnLinkError&) {
      }
    }
  if (punctures.size() < 2) throw std::runtime_error("correction-independence: no two punctures off the link");

  // A second admissible framing.
  std::optional<Link> reframed;
  for (const Vec3 f : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0.6, 0, 0.8}, Vec3{0, 0.6, 0.8}}) {
    if (f == link.framing) continue;
    Link l = link;
    l.framing = f;
    if (framing_margin(l) <= 0) continue;
    try {
      run(l, punctures[0], 1);
      reframed = l;
      break;
    } catch (const HomotopyBlockedError&) {
    }
  }

  for (int n : {1, 2}) {
    const auto ref = run(link, punctures[0], n);
    const auto moved = run(link, punctures[1], n);
    out.push_back(verdict("degree-" + std::to_string(n) + " correction independent of the puncture",
                          compare(ref, moved), c.sigma, "largest term difference in combined standard errors"));
    if (!reframed) {
      out.push_back({"degree-" + std::to_string(n) + " correction independent of the framing", false, kInf, c.sigma,
                     "no second admissible framing"});
      continue;
    }
    const auto other = run(*reframed, punctures[0], n);
    char buf[96];
    std::snprintf(buf, sizeof buf, "framing (%g, %g, %g) against (%g, %g, %g)", link.framing[0], link.framing[1],
                  link.framing[2], reframed->framing[0], reframed->framing[1], reframed->framing[2]);
    out.push_back(verdict("degree-" + std::to_string(n) + " correction independent of the framing",
                          compare(ref, other), c.sigma, buf));
  }
  return out;
}

}  // namespace vassiliev::detail
