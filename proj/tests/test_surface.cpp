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

#include "vassiliev/enumerate.hpp"
#include "vassiliev/relations.hpp"
#include "vassiliev/stu.hpp"
#include "vassiliev/surface.hpp"

using namespace vassiliev;

TEST_SUITE("surface-algebra") {
  TEST_CASE("AS and IHX vanish in the quotient") {
    for (int n = 1; n <= 2; ++n) {
      CAPTURE(n);
      const auto b = relation_basis(n, WindingWindow{1, {Winding{}}});
      const auto as = verify_as(b, 0);
      const auto ihx = verify_ihx(b, 0);
      CHECK(as.ok());
      CHECK(ihx.ok());
      CHECK((n == 1 || as.checked > 0));
    }
    CHECK_THROWS_AS(verify_as(relation_basis(1, WindingWindow{0, {Winding{}}}), 0), std::invalid_argument);
  }

  TEST_CASE("reduction to chords does not depend on the expansion order") {
    const WindingWindow w{1, {Winding{}}};
    const auto basis = relation_basis(2, WindingWindow{2, {Winding{}}});
    for (int t = 1; t <= 2; ++t)
      for (const auto& d : window_diagrams(2, t, w)) {
        INFO(canonicalize(d).key);
        const auto first = normal_form(reduce_to_chords(d, {ExpansionOrder::kFirstLeg, 0}), basis);
        CHECK(first == normal_form(reduce_to_chords(d, {ExpansionOrder::kLastLeg, 0}), basis));
        for (std::uint64_t seed = 1; seed <= 3; ++seed)
          CHECK(first == normal_form(reduce_to_chords(d, {ExpansionOrder::kRandomLeg, seed}), basis));
      }
  }

  TEST_CASE("gauge fixing is idempotent and keeps the diagram valid") {
    const WindingWindow w{1, {Winding{}}};
    for (const auto& d : window_diagrams(2, 0, w)) {
      const auto g = gauge_fix(d);
      CHECK(validate(g).empty());
      CHECK(gauge_fix(g) == g);
    }
  }

  TEST_CASE("the tripod reduces to a difference of two chord diagrams") {
    const auto y = SurfaceDiagram::trivial(parse_diagram("C(0 1 2) E(0>3 1>3 2>3) R(3:0,1,2)"));
    const auto chords = reduce_to_chords(y);
    REQUIRE(chords.size() == 2);
    Rational total = 0;
    for (const auto& [key, term] : chords.terms()) {
      CHECK(abs(term.coeff) == 1);
      total += term.coeff;
    }
    CHECK(total == 0);
  }
}
