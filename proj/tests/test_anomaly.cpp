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

#include <doctest.h>

#include <cmath>
#include <string>

#include "vassiliev/anomaly.hpp"
#include "vassiliev/link.hpp"

using namespace vassiliev;

namespace {

std::string fixture(const std::string& name) { return std::string(VASSILIEV_TEST_DATA) + "/" + name + ".json"; }

double largest(const TwoForm5& f) {
  double m = 0;
  for (const auto& row : f)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_SUITE("anomaly") {
  TEST_CASE("fiber dimensions") {
    const auto chord = parse_diagram("C(0 1) E(0>1)");
    CHECK(fiber_dimension(chord, {0, 1}) == 0);
    const auto y = parse_diagram("C(0 1 2) E(0>3 1>3 2>3) R(3:0,1,2)");
    CHECK(fiber_dimension(y, {0, 1, 2, 3}) == 3 * 5 - 6 - 5);
  }

  TEST_CASE("only anomalous faces are accepted") {
    PropagatorParams p;
    const auto y = parse_diagram("C(0 1 2) E(0>3 1>3 2>3) R(3:0,1,2)");
    CHECK_THROWS_AS(omega_T({{0.5, 0.5, 0.5}, {0, 0, 1}}, y, {0, 3}, p, {}), NotAnomalousError);
  }

  TEST_CASE("sphere frame is positively oriented and orthonormal") {
    for (const Vec3 v : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0.6, 0, 0.8}, Vec3{0, 0, -1}}) {
      const auto [f1, f2] = sphere_frame(v);
      const double det = v[0] * (f1[1] * f2[2] - f1[2] * f2[1]) - v[1] * (f1[0] * f2[2] - f1[2] * f2[0]) +
                         v[2] * (f1[0] * f2[1] - f1[1] * f2[0]);
      CHECK(det == doctest::Approx(1.0));
      CHECK(f1[0] * f2[0] + f1[1] * f2[1] + f1[2] * f2[2] == doctest::Approx(0.0));
    }
  }

  TEST_CASE("face propagator lives in a vertical cone") {
    PropagatorParams p;
    const Vec3 a{0, 1, 0}, b{0, 0, 1};
    CHECK(face_propagator({1, 0, 0}, a, b, p) == 0.0);
    CHECK(face_propagator({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, p) != 0.0);
  }

  TEST_CASE("degree two anomaly vanishes at sampled directions") {
    PropagatorParams p;
    p.n = 2;
    AnomalyOptions opt;
    opt.budget = 200;
    for (const Vec3 v : {Vec3{0, 0, 1}, Vec3{0.01, 0, 0.99995}}) {
      double value = 0, magnitude = 0;
      for (const auto& [key, a] : omega_n({{0.3, 0.4, 0.5}, v}, 2, 1, p, opt)) {
        value = std::max(value, largest(a.value));
        magnitude = std::max(magnitude, a.magnitude);
      }
      CAPTURE(magnitude);
      CHECK(value <= 1e-9 * std::max(1.0, magnitude));
    }
  }

  TEST_CASE("correction terms") {
    PropagatorParams p;
    CorrectionOptions opt;
    opt.budget = 2000;
    opt.fiber.budget = 16;
    CHECK(correction(load_link(fixture("torus_pair")), 1, p, opt).terms.empty());

    const auto hopf = load_link(fixture("hopf"));
    const auto on_link = eval(hopf, 0, 0.0).point;
    opt.puncture = {on_link.x, on_link.y};
    CHECK_THROWS_AS(correction(hopf, 1, p, opt), PunctureOnLinkError);
  }
}
