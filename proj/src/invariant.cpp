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

#include "vassiliev/invariant.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "vassiliev/enumerate.hpp"
#include "vassiliev/relations.hpp"
#include "vassiliev/stu.hpp"

namespace vassiliev {
namespace {

std::int64_t pick(const std::vector<std::int64_t>& per_degree, int n, std::int64_t fallback) {
  return n >= 1 && n <= static_cast<int>(per_degree.size()) ? per_degree[n - 1] : fallback;
}

std::int64_t max_winding(const SurfaceDiagram& d) {
  std::int64_t r = 0;
  auto see = [&](Winding w) { r = std::max({r, std::abs(w.p), std::abs(w.q)}); };
  for (const auto& w : d.edge_winding) see(w);
  for (const auto& arcs : d.arc_winding)
    for (const auto& w : arcs) see(w);
  return r;
}

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.contains(k)) throw std::invalid_argument(where + ": unknown key '" + k + "'");
}

// Coordinates of every listed diagram in the quotient basis, growing the
// window until all of them fit.
struct Projection {
  RelationBasis basis;
  std::map<std::string, std::vector<double>> coords;
};

Projection project(int n, const Link& link, const std::map<std::string, SurfaceDiagram>& diagrams, int min_radius) {
  WindingWindow window;
  window.core_classes.clear();
  for (const auto& c : link.components) window.core_classes.push_back(c.core_class);
  std::int64_t r = 0;
  for (const auto& [k, d] : diagrams) r = std::max(r, max_winding(d));
  for (window.radius = std::max(static_cast<int>(r) + 1, min_radius);; ++window.radius) {
    Projection p;
    p.basis = relation_basis(n, window);
    try {
      for (const auto& [k, d] : diagrams) {
        const auto exact = normal_form(RationalSum(d), p.basis);
        std::vector<double> v;
        for (const auto& x : exact) v.push_back(static_cast<double>(x));
        p.coords[k] = std::move(v);
      }
      return p;
    } catch (const WindowTooSmallError&) {
      if (window.radius > std::max<std::int64_t>(r, min_radius) + 4) throw;
    }
  }
}

}  // namespace

std::int64_t InvariantOptions::budget_for(int n) const { return pick(budgets, n, budget); }
std::int64_t InvariantOptions::correction_budget_for(int n) const {
  return pick(correction_budgets, n, correction.budget);
}

PropagatorParams InvariantOptions::params() const {
  PropagatorParams p;
  p.n = std::max(1, degree);
  p.epsilon = epsilon;
  return p;
}

InvariantOptions options_from_json(const nlohmann::json& config, const Link& link) {
  InvariantOptions opt;
  opt.correction_budgets = {20000, 256};
  opt.correction.fiber.budget = 256;
  if (link.run) {
    opt.epsilon = link.run->epsilon;
    opt.degree = link.run->degree;
    opt.budget = link.run->budget;
    opt.seed = link.run->seed;
  }
  if (config.is_null()) return opt;
  check_keys(config,
             {"link", "degree", "epsilon", "budget", "budgets", "seed", "shards", "workers", "target_error",
              "window_radius", "include_correction", "correction"},
             "config");
  opt.degree = config.value("degree", opt.degree);
  opt.epsilon = config.value("epsilon", opt.epsilon);
  opt.budget = config.value("budget", opt.budget);
  opt.budgets = config.value("budgets", opt.budgets);
  opt.seed = config.value("seed", opt.seed);
  opt.shards = config.value("shards", opt.shards);
  opt.workers = config.value("workers", opt.workers);
  opt.target_error = config.value("target_error", opt.target_error);
  opt.min_window_radius = config.value("window_radius", opt.min_window_radius);
  opt.include_correction = config.value("include_correction", opt.include_correction);
  if (config.contains("correction")) {
    const auto& c = config.at("correction");
    check_keys(c, {"puncture", "budget", "budgets", "fiber_budget", "fiber_shards", "track_attempts",
                   "framing_clearance"},
               "config.correction");
    opt.correction.puncture = c.value("puncture", opt.correction.puncture);
    opt.correction.budget = c.value("budget", opt.correction.budget);
    opt.correction_budgets = c.value("budgets", opt.correction_budgets);
    opt.correction.fiber.budget = c.value("fiber_budget", opt.correction.fiber.budget);
    opt.correction.fiber.shards = c.value("fiber_shards", opt.correction.fiber.shards);
    opt.correction.track_attempts = c.value("track_attempts", opt.correction.track_attempts);
    opt.correction.framing_clearance = c.value("framing_clearance", opt.correction.framing_clearance);
  }
  if (opt.degree < 0 || opt.degree > 2) throw std::invalid_argument("config: degree must lie in 0..2");
  if (opt.workers < 1) throw std::invalid_argument("config: workers must be positive");
  return opt;
}

nlohmann::json to_json(const InvariantOptions& opt) {
  return {{"degree", opt.degree},
          {"epsilon", opt.epsilon},
          {"budget", opt.budget},
          {"budgets", opt.budgets},
          {"seed", opt.seed},
          {"shards", opt.shards},
          {"target_error", opt.target_error},
          {"window_radius", opt.min_window_radius},
          {"include_correction", opt.include_correction},
          {"correction",
           {{"puncture", opt.correction.puncture},
            {"budget", opt.correction.budget},
            {"budgets", opt.correction_budgets},
            {"fiber_budget", opt.correction.fiber.budget},
            {"fiber_shards", opt.correction.fiber.shards},
            {"track_attempts", opt.correction.track_attempts},
            {"framing_clearance", opt.correction.framing_clearance}}}};
}

bool InvariantResult::converged() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const DegreeResult& d) { return d.converged; });
}

nlohmann::json InvariantResult::to_json(bool timings) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : degrees) {
    nlohmann::json terms = nlohmann::json::array(), coords = nlohmann::json::array();
    for (const auto& [key, t] : d.terms)
      terms.push_back({{"diagram", key}, {"value", t.value + 0.0}, {"std_error", t.std_error}});
    for (const auto& c : d.coordinates)
      coords.push_back({{"generator", c.generator}, {"value", c.value + 0.0}, {"std_error", c.std_error}});
    nlohmann::json j = {{"degree", d.degree},   {"terms", terms},         {"coordinates", coords},
                        {"window_radius", d.window_radius}, {"samples", d.samples}, {"converged", d.converged}};
    if (d.degree > 0) j["correction"] = d.correction.to_json();
    if (timings) j["seconds"] = d.seconds;
    out.push_back(std::move(j));
  }
  return out;
}

InvariantResult assemble_V(const Link& link, const InvariantOptions& opt) {
  const PropagatorParams params = opt.params();
  params.validate();
  const int l = link.size();
  InvariantResult result;

  DegreeResult zero;
  const auto empty = canonicalize(realize(link, empty_diagram(l), {}));
  zero.terms[empty.key] = {empty.form, 1.0, 0.0};
  zero.coordinates.push_back({empty.key, 1.0, 0.0});
  result.degrees.push_back(std::move(zero));

  for (int n = 1; n <= opt.degree; ++n) {
    const auto start = std::chrono::steady_clock::now();
    DegreeResult deg;
    deg.degree = n;
    const double scale = std::ldexp(1.0, -n);

    ShardTable table;
    table.shards.assign(opt.shards, {});
    EstimateOptions eo;
    eo.budget = opt.budget_for(n);
    eo.seed = opt.seed;
    eo.shards = opt.shards;
    eo.workers = opt.workers;
    for (const auto& ka : enumerate(n, l)) {
      const auto out = estimate(link, ka, params, eo);
      table.merge(out.table);
      deg.samples += out.samples;
    }
    for (auto& shard : table.shards)
      for (auto& [k, v] : shard) v *= scale;

    // The correction, reduced to chord diagrams, enters with its own error.
    std::map<std::string, SurfaceDiagram> diagrams = table.diagrams;
    std::map<std::string, std::pair<double, double>> corr;  // key -> (value, variance)
    if (opt.include_correction) {
      CorrectionOptions co = opt.correction;
      co.budget = opt.correction_budget_for(n);
      co.fiber.seed = opt.seed;
      deg.correction = correction(link, n, params, co);
      for (const auto& [key, term] : deg.correction.terms) {
        const RationalSum chords = reduce_to_chords(term.diagram);
        for (const auto& [ck, ct] : chords.terms()) {
          const double c = static_cast<double>(ct.coeff);
          auto& slot = corr[ck];
          slot.first += scale * c * term.value;
          slot.second += std::pow(scale * c * term.std_error, 2);
          diagrams.emplace(ck, ct.diagram);
        }
      }
    }

    const auto summary = summarize(table);
    for (const auto& [key, d] : diagrams) {
      EstimateTerm t{d, 0, 0};
      if (auto it = summary.find(key); it != summary.end()) t = it->second;
      if (auto it = corr.find(key); it != corr.end()) {
        t.value -= it->second.first;
        t.std_error = std::sqrt(t.std_error * t.std_error + it->second.second);
      }
      if (t.value != 0 || t.std_error != 0) deg.terms[key] = t;
    }

    const Projection proj = project(n, link, diagrams, opt.min_window_radius);
    deg.window_radius = proj.basis.window.radius;
    const std::size_t dim = proj.basis.dimension();
    std::vector<std::vector<double>> shard_coords(opt.shards, std::vector<double>(dim, 0));
    for (int s = 0; s < opt.shards; ++s)
      for (const auto& [key, v] : table.shards[s]) {
        const auto& vec = proj.coords.at(key);
        for (std::size_t i = 0; i < dim; ++i) shard_coords[s][i] += v * vec[i];
      }
    for (std::size_t i = 0; i < dim; ++i) {
      double mean = 0, ss = 0, corr_value = 0, corr_var = 0;
      for (int s = 0; s < opt.shards; ++s) mean += shard_coords[s][i] / opt.shards;
      for (int s = 0; s < opt.shards; ++s) ss += std::pow(shard_coords[s][i] - mean, 2);
      for (const auto& [key, cv] : corr) {
        const double a = proj.coords.at(key)[i];
        corr_value += a * cv.first;
        corr_var += a * a * cv.second;
      }
      Coordinate c;
      c.generator = to_text(proj.basis.generators[proj.basis.basis[i]]);
      c.value = mean - corr_value;
      c.std_error = std::sqrt(ss / (opt.shards * (opt.shards - 1.0)) + corr_var);
      if (opt.target_error > 0 && c.std_error > opt.target_error) deg.converged = false;
      deg.coordinates.push_back(std::move(c));
    }
    deg.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.degrees.push_back(std::move(deg));
  }
  return result;
}

}  // namespace vassiliev
