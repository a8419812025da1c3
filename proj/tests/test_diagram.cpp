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

#include <map>
#include <set>

#include "oracles.hpp"
#include "vassiliev/canon.hpp"
#include "vassiliev/collapse.hpp"
#include "vassiliev/enumerate.hpp"

using namespace vassiliev;

namespace {

void expect_matches_brute_force(int n, int l) {
  const auto brute = oracle::brute_force_classes(n, l);
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> expected;
  for (const auto& c : brute) expected.emplace(std::make_pair(c.core_sizes, c.code), c.automorphisms);

  const auto table = enumerate(n, l);
  CHECK(table.size() == expected.size());
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (const auto& d : table) {
    const auto c = oracle::classify(d);
    const auto key = std::make_pair(c.core_sizes, c.code);
    INFO(to_text(d));
    REQUIRE(expected.count(key) == 1);
    CHECK(seen.insert(key).second);
    CHECK(automorphism_orders(d).all == expected.at(key));
  }
}

}  // namespace

TEST_SUITE("diagram-core") {
  TEST_CASE("enumeration agrees with exhaustive generation") {
    for (int l = 1; l <= 2; ++l)
      for (int n = 1; n <= 2; ++n) {
        CAPTURE(n);
        CAPTURE(l);
        expect_matches_brute_force(n, l);
      }
  }

  TEST_CASE("small tables") {
    CHECK(enumerate(1, 1).size() == 1);
    CHECK(enumerate(1, 2).size() == 3);
    CHECK(enumerate(2, 1).size() == 5);
    CHECK_THROWS_AS(enumerate(5, 1), ResourceBoundError);
  }

  TEST_CASE("text notation round trip") {
    for (const auto& d : enumerate(2, 2)) CHECK(to_text(parse_diagram(to_text(d))) == to_text(d));
    CHECK(to_text(chord_diagram({{0, 1, 0, 1}})) == "C(0 1 2 3) E(0>2 1>3)");
  }

  TEST_CASE("validation rejects malformed diagrams") {
    auto d = chord_diagram({{0, 0}});
    d.edges[0].head = d.edges[0].tail;
    CHECK_FALSE(is_valid(d));
    CHECK_THROWS(parse_diagram("C(0 1) E(0>"));
  }

  TEST_CASE("canonical form is invariant under relabeling") {
    for (const auto& d : enumerate(2, 1)) {
      std::vector<int> reverse(d.vertex_count());
      for (int v = 0; v < d.vertex_count(); ++v) reverse[v] = d.vertex_count() - 1 - v;
      const auto e = relabel(d, reverse, nullptr);
      CHECK(isomorphic(d, e));
      CHECK(to_text(canonicalize(e).form) == to_text(canonicalize(d).form));
    }
  }

  TEST_CASE("collapse multiplicity identity") {
    for (int n = 1; n <= 2; ++n)
      for (const auto& d : enumerate(n, 2))
        for (int e = 0; e < d.edge_count(); ++e) {
          if (collapse_edge(d, e).degeneracy != Degeneracy::kNone) continue;
          INFO(to_text(d), " edge ", e);
          CHECK(multiplicity_identity(d, e).holds());
          CHECK_NOTHROW(collapse_multiplicity(d, e, true));
        }
  }
}
