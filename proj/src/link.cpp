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

#include "vassiliev/link.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace vassiliev {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Periodic offset of s from c in [-1/2, 1/2).
double wrap(double s, double c) {
  double d = s - c;
  return d - std::floor(d + 0.5);
}

}  // namespace

double TrigSeries::value(double s) const {
  double v = c0;
  for (std::size_t k = 0; k < cos.size(); ++k) v += cos[k] * std::cos(kTwoPi * (k + 1) * s);
  for (std::size_t k = 0; k < sin.size(); ++k) v += sin[k] * std::sin(kTwoPi * (k + 1) * s);
  return v;
}

double TrigSeries::derivative(double s) const {
  double v = 0;
  for (std::size_t k = 0; k < cos.size(); ++k) {
    const double w = kTwoPi * (k + 1);
    v -= cos[k] * w * std::sin(w * s);
  }
  for (std::size_t k = 0; k < sin.size(); ++k) {
    const double w = kTwoPi * (k + 1);
    v += sin[k] * w * std::cos(w * s);
  }
  return v;
}

double TrigSeries::curvature_bound() const {
  double b = 0;
  for (std::size_t k = 0; k < cos.size(); ++k) b += std::abs(cos[k]) * std::pow(kTwoPi * (k + 1), 2);
  for (std::size_t k = 0; k < sin.size(); ++k) b += std::abs(sin[k]) * std::pow(kTwoPi * (k + 1), 2);
  return b;
}

double HeightBump::value(double s) const {
  const double x = wrap(s, center) / halfwidth;
  if (std::abs(x) >= 1) return 0;
  return amplitude * std::exp(1 - 1 / (1 - x * x));
}

double HeightBump::derivative(double s) const {
  const double x = wrap(s, center) / halfwidth;
  if (std::abs(x) >= 1) return 0;
  const double u = 1 - x * x;
  return amplitude * std::exp(1 - 1 / u) * (-2 * x / (u * u)) / halfwidth;
}

CurvePoint eval(const Link& link, int comp, double s) {
  const Component& c = link.components.at(comp);
  CurvePoint out;
  const double lx = c.core_class.p * s + c.x.value(s);
  const double ly = c.core_class.q * s + c.y.value(s);
  double h = c.h.value(s), dh = c.h.derivative(s);
  for (const auto& b : c.bumps) {
    h += b.value(s);
    dh += b.derivative(s);
  }
  const TorusPoint t = reduce(lx, ly);
  out.point = {t.x, t.y, h};
  out.lift = {lx, ly};
  out.tangent = {c.core_class.p + c.x.derivative(s), c.core_class.q + c.y.derivative(s), dh};
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

json series_json(const TrigSeries& t) { return {{"c0", t.c0}, {"cos", t.cos}, {"sin", t.sin}}; }

TrigSeries series_from(const json& j) {
  TrigSeries t;
  t.c0 = j.value("c0", 0.0);
  if (j.contains("cos")) t.cos = j.at("cos").get<std::vector<double>>();
  if (j.contains("sin")) t.sin = j.at("sin").get<std::vector<double>>();
  return t;
}

}  // namespace

json to_json(const Link& link) {
  json comps = json::array();
  for (const auto& c : link.components) {
    json bumps = json::array();
    for (const auto& b : c.bumps)
      bumps.push_back({{"center", b.center}, {"halfwidth", b.halfwidth}, {"amplitude", b.amplitude}});
    comps.push_back({{"class", {c.core_class.p, c.core_class.q}},
                     {"x", series_json(c.x)},
                     {"y", series_json(c.y)},
                     {"h", series_json(c.h)},
                     {"bumps", bumps}});
  }
  json dps = json::array();
  for (const auto& d : link.double_points)
    dps.push_back({{"a", {d.comp_a, d.s_a}}, {"b", {d.comp_b, d.s_b}}});
  json out = {{"lattice", "unit_square"},
              {"name", link.name},
              {"framing", link.framing},
              {"components", comps},
              {"double_points", dps},
              {"ball_radius", link.ball_radius},
              {"push", link.push}};
  if (link.run) {
    out["run"] = {{"epsilon", link.run->epsilon},
                  {"degree", link.run->degree},
                  {"budget", link.run->budget},
                  {"seed", link.run->seed}};
  }
  return out;
}

Link link_from_json(const json& j) {
  try {
    if (j.value("lattice", std::string("unit_square")) != "unit_square")
      throw LinkError("only the unit_square lattice is supported");
    Link link;
    link.name = j.value("name", std::string());
    if (j.contains("framing")) link.framing = j.at("framing").get<Vec3>();
    for (const auto& c : j.at("components")) {
      Component comp;
      const auto cls = c.at("class").get<std::array<std::int64_t, 2>>();
      comp.core_class = {cls[0], cls[1]};
      comp.x = series_from(c.at("x"));
      comp.y = series_from(c.at("y"));
      comp.h = series_from(c.at("h"));
      if (c.contains("bumps"))
        for (const auto& b : c.at("bumps"))
          comp.bumps.push_back({b.at("center").get<double>(), b.at("halfwidth").get<double>(),
                                b.at("amplitude").get<double>()});
      link.components.push_back(std::move(comp));
    }
    if (j.contains("double_points")) {
      for (const auto& d : j.at("double_points")) {
        DoublePoint dp;
        dp.comp_a = d.at("a").at(0).get<int>();
        dp.s_a = d.at("a").at(1).get<double>();
        dp.comp_b = d.at("b").at(0).get<int>();
        dp.s_b = d.at("b").at(1).get<double>();
        link.double_points.push_back(dp);
      }
    }
    link.ball_radius = j.value("ball_radius", link.ball_radius);
    link.push = j.value("push", link.push);
    if (j.contains("run")) {
      const auto& r = j.at("run");
      RunSettings run;
      run.epsilon = r.value("epsilon", run.epsilon);
      run.degree = r.value("degree", run.degree);
      run.budget = r.value("budget", run.budget);
      run.seed = r.value("seed", run.seed);
      link.run = run;
    }
    for (const auto& d : link.double_points)
      if (d.comp_a < 0 || d.comp_a >= link.size() || d.comp_b < 0 || d.comp_b >= link.size())
        throw LinkError("double point refers to a missing component");
    return link;
  } catch (const json::exception& e) {
    throw LinkError(std::string("malformed link file: ") + e.what());
  }
}

Link load_link(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LinkError("cannot open link file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw LinkError("link file " + path + ": " + e.what());
  }
  return link_from_json(j);
}

void save_link(const Link& link, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw LinkError("cannot write link file " + path);
  out << to_json(link).dump(2) << '\n';
}

}  // namespace vassiliev
