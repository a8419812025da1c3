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

#include <filesystem>
#include <string>

#include "vassiliev/link.hpp"

using namespace vassiliev;

namespace {

std::string fixture(const std::string& name) { return std::string(VASSILIEV_TEST_DATA) + "/" + name + ".json"; }

Rational total(const RationalSum& s) {
  Rational t = 0;
  for (const auto& [key, term] : s.terms()) t += term.coeff;
  return t;
}

}  // namespace

TEST_SUITE("link-model") {
  TEST_CASE("fixtures load and validate") {
    for (const char* name : {"hopf", "hopf_isotoped", "torus_pair", "torus_pair_isotoped", "distant", "singular1",
                             "singular2"}) {
      CAPTURE(name);
      const auto link = load_link(fixture(name));
      CHECK(validate(link).empty());
      CHECK(framing_margin(link) > 0);
      CHECK(link_from_json(to_json(link)) == link);
    }
  }

  TEST_CASE("unreadable and malformed files are rejected") {
    CHECK_THROWS(load_link(fixture("no_such_link")));
    auto j = to_json(load_link(fixture("hopf")));
    j.erase("components");
    CHECK_THROWS(link_from_json(j));
  }

  TEST_CASE("validation reports self-intersection and bad heights") {
    auto link = load_link(fixture("hopf"));
    link.components[1] = link.components[0];
    CHECK_FALSE(validate(link).empty());

    link = load_link(fixture("hopf"));
    link.components[0].h.c0 = 1.2;
    CHECK_FALSE(validate(link).empty());

    link = load_link(fixture("hopf"));
    link.framing = {0, 0, 0};
    CHECK_FALSE(validate(link).empty());
  }

  TEST_CASE("curve evaluation") {
    const auto link = load_link(fixture("hopf"));
    const auto p = eval(link, 0, 0.0);
    CHECK(p.point.x == doctest::Approx(0.65));
    CHECK(p.point.y == doctest::Approx(0.5));
    const double s = 0.3, h = 1e-6;
    const auto a = eval(link, 1, s - h), b = eval(link, 1, s + h), c = eval(link, 1, s);
    for (int k = 0; k < 2; ++k) CHECK(c.tangent[k] == doctest::Approx((b.lift[k] - a.lift[k]) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("homotopy linking of the fixtures") {
    CHECK(abs(total(homotopy_linking(load_link(fixture("hopf")), 0, 1))) == 1);
    CHECK(abs(total(homotopy_linking(load_link(fixture("torus_pair")), 0, 1))) == 1);
    CHECK(homotopy_linking(load_link(fixture("distant")), 0, 1).empty());
  }

  TEST_CASE("resolutions of singular links") {
    for (const char* name : {"singular1", "singular2"}) {
      const auto link = load_link(fixture(name));
      const auto res = resolutions(link);
      const std::size_t k = link.double_points.size();
      REQUIRE(res.size() == (std::size_t{1} << k));
      int sum = 0;
      for (const auto& r : res) {
        CHECK(r.link.double_points.empty());
        CHECK(validate(r.link).empty());
        int prod = 1;
        for (int e : r.eta) prod *= e;
        CHECK(prod == r.sign);
        sum += r.sign;
      }
      CHECK(sum == 0);
    }
    CHECK_THROWS_AS(resolutions(load_link(fixture("hopf"))), LinkError);
  }
}
