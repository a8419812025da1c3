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

#include <string>

#include "vassiliev/invariant.hpp"

using namespace vassiliev;

namespace {

std::string fixture(const std::string& name) { return std::string(VASSILIEV_TEST_DATA) + "/" + name + ".json"; }

const AbstractDiagram kLinkingChord = parse_diagram("C(0)(1) E(0>1)");

}  // namespace

TEST_SUITE("integrator") {
  TEST_CASE("support boxes cover the near-diagonal set only") {
    PropagatorParams p;
    const auto hopf = load_link(fixture("hopf"));
    const auto boxes = support_boxes(hopf, 0, 1, p);
    CHECK_FALSE(boxes.empty());
    for (const auto& b : boxes) CHECK(b.area() > 0);
    CHECK(support_boxes(load_link(fixture("distant")), 0, 1, p).empty());
  }

  TEST_CASE("integrand vanishes off the support and for trivalent diagrams") {
    PropagatorParams p;
    const auto hopf = load_link(fixture("hopf"));
    Configuration far;
    far.param = {0.0, 0.5};
    CHECK(integrand(kLinkingChord, far, hopf, p).zero);

    const auto y = parse_diagram("C(0 1)(2) E(0>3 1>3 2>3) R(3:0,1,2)");
    Configuration c;
    c.param = {0.1, 0.2, 0.3};
    c.interior = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0.5, 0.5, 0.5}};
    CHECK(integrand(y, c, hopf, p).value == 0.0);
  }

  TEST_CASE("estimates are reproducible and independent of the worker count") {
    PropagatorParams p;
    const auto hopf = load_link(fixture("hopf"));
    EstimateOptions opt;
    opt.budget = 4096;
    opt.shards = 16;
    opt.seed = 5;
    const auto one = estimate(hopf, kLinkingChord, p, opt).to_json().dump();
    opt.workers = 3;
    CHECK(estimate(hopf, kLinkingChord, p, opt).to_json().dump() == one);
    opt.seed = 6;
    CHECK(estimate(hopf, kLinkingChord, p, opt).to_json().dump() != one);
  }

  TEST_CASE("estimate reports every sample and a nonnegative error") {
    PropagatorParams p;
    EstimateOptions opt;
    opt.budget = 2048;
    opt.shards = 8;
    const auto out = estimate(load_link(fixture("torus_pair")), kLinkingChord, p, opt);
    CHECK(out.samples == opt.budget);
    CHECK_FALSE(out.terms.empty());
    for (const auto& [key, t] : out.terms) CHECK(t.std_error >= 0);
  }

  TEST_CASE("run options merge link defaults and reject unknown keys") {
    const auto hopf = load_link(fixture("hopf"));
    const auto opt = options_from_json(nlohmann::json::object(), hopf);
    CHECK(opt.seed == hopf.run->seed);
    CHECK(opt.degree == hopf.run->degree);
    CHECK(options_from_json({{"degree", 1}, {"budget", 1000}}, hopf).budget_for(1) == 1000);
    CHECK_THROWS_AS(options_from_json({{"degre", 1}}, hopf), std::invalid_argument);
    CHECK_THROWS_AS(options_from_json({{"degree", 3}}, hopf), std::invalid_argument);
    CHECK_THROWS_AS(options_from_json({{"workers", 0}}, hopf), std::invalid_argument);
  }

  TEST_CASE("degree zero is the unit") {
    InvariantOptions opt;
    opt.degree = 0;
    const auto v = assemble_V(load_link(fixture("distant")), opt);
    REQUIRE(v.degrees.size() == 1);
    REQUIRE(v.degrees[0].coordinates.size() == 1);
    CHECK(v.degrees[0].coordinates[0].value == 1.0);
    CHECK(v.converged());
  }

  TEST_CASE("assembled reports are byte-identical across worker counts") {
    InvariantOptions opt;
    opt.degree = 1;
    opt.budget = 4096;
    opt.shards = 16;
    opt.correction.budget = 2048;
    opt.correction.fiber.budget = 64;
    const auto hopf = load_link(fixture("hopf"));
    const auto a = assemble_V(hopf, opt).to_json(false).dump();
    opt.workers = 4;
    CHECK(assemble_V(hopf, opt).to_json(false).dump() == a);
  }
}
