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
#include <random>
#include <vector>

#include "oracles.hpp"
#include "vassiliev/geometry.hpp"
#include "vassiliev/kernels.hpp"

using namespace vassiliev;

namespace {

struct PairSample {
  MPoint x, y;
  double tx[2], ty[2];
};

// Pairs in U_n, half of them closer in height than delta.
std::vector<PairSample> random_pairs(const PropagatorParams& p, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PairSample> out;
  for (int i = 0; i < count; ++i) {
    PairSample s;
    const double r = 1.2 * p.r0() * std::sqrt(unit(rng));
    const double a = 2 * M_PI * unit(rng);
    s.x = {unit(rng), unit(rng), unit(rng)};
    const double dh = (i % 2 ? 2.0 : 0.5) * p.delta() * (unit(rng) - 0.5) * 2;
    s.y = {s.x.x + r * std::cos(a), s.x.y + r * std::sin(a), std::clamp(s.x.h + dh, 0.0, 1.0)};
    const auto base = reduce(s.y.x, s.y.y);
    s.y.x = base.x;
    s.y.y = base.y;
    for (auto* t : {s.tx, s.ty}) {
      const double b = 2 * M_PI * unit(rng);
      t[0] = std::cos(b);
      t[1] = std::sin(b);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("torus-geometry") {
  TEST_CASE("torus reduction and shortest displacement") {
    const auto p = reduce(1.25, -0.25);
    CHECK(p.x == doctest::Approx(0.25));
    CHECK(p.y == doctest::Approx(0.75));
    const auto d = displacement({0.95, 0.5}, {0.05, 0.5});
    CHECK(d[0] == doctest::Approx(0.1));
    CHECK(dist({0.0, 0.0}, {0.9, 0.9}) == doctest::Approx(std::sqrt(0.02)));
  }

  TEST_CASE("Thom form has unit mass") {
    for (auto profile : {BumpProfile::kStandard, BumpProfile::kSharp}) {
      PropagatorParams p;
      p.profile = profile;
      const int m = 400;
      const double h = 2 * p.r0() / m;
      double mass = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          mass += thom_density({-p.r0() + (i + 0.5) * h, -p.r0() + (j + 0.5) * h}, p) * h * h;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
  }

  TEST_CASE("propagator is antisymmetric under the swap and horizontal") {
    PropagatorParams p;
    for (const auto& s : random_pairs(p, 1000, 3)) {
      if (inside_n(s.x, s.y, p)) {
        CHECK_THROWS_AS(omega(s.x, s.y, p), InsideNError);
        continue;
      }
      const auto a = omega(s.x, s.y, p);
      const auto b = omega(s.y, s.x, p);
      for (int r = 0; r < 6; ++r) {
        CHECK(a[r][2] == 0.0);
        CHECK(a[r][5] == 0.0);
        for (int c = 0; c < 6; ++c) {
          CHECK(a[r][c] == -a[c][r]);
          CHECK(a[r][c] + b[(r + 3) % 6][(c + 3) % 6] == 0.0);
        }
      }
    }
  }

  TEST_CASE("propagator is closed") {
    for (int n = 1; n <= 2; ++n) {
      PropagatorParams p;
      p.n = n;
      const auto c = oracle::propagator_closedness(p, 1000, 11 + n);
      CAPTURE(c.max_defect);
      CAPTURE(c.scale);
      CHECK(c.max_defect <= 1e-6 * c.scale);
    }
  }

  TEST_CASE("propagator vanishes away from the diagonal") {
    PropagatorParams p;
    const auto a = omega({0.1, 0.1, 0.2}, {0.4, 0.1, 0.8}, p);
    for (const auto& row : a)
      for (double v : row) CHECK(v == 0.0);
    CHECK_THROWS_AS(geodesic_dir({0.1, 0.1, 0.2}, {0.4, 0.1, 0.8}, p), OutsideUnError);
  }

  TEST_CASE("chord kernels agree with the propagator and with each other") {
    PropagatorParams p;
    const auto pairs = random_pairs(p, 1003, 5);
    std::vector<double> xa, ya, ha, txa, tya, xb, yb, hb, txb, tyb;
    for (const auto& s : pairs) {
      xa.push_back(s.x.x), ya.push_back(s.x.y), ha.push_back(s.x.h);
      xb.push_back(s.y.x), yb.push_back(s.y.y), hb.push_back(s.y.h);
      txa.push_back(s.tx[0]), tya.push_back(s.tx[1]);
      txb.push_back(s.ty[0]), tyb.push_back(s.ty[1]);
    }
    const ChordBatch batch{xa.data(), ya.data(), ha.data(), txa.data(), tya.data(),
                           xb.data(), yb.data(), hb.data(), txb.data(), tyb.data(), pairs.size()};
    const auto kp = KernelParams::from(p);
    std::vector<double> scalar(pairs.size());
    chord_weight_batch_scalar(batch, kp, scalar.data());

    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& s = pairs[i];
      double expected = 0;
      if (!inside_n(s.x, s.y, p)) {
        const auto a = omega(s.x, s.y, p);
        const double u[6] = {0, 0, 0, s.ty[0], s.ty[1], 0};
        const double v[6] = {s.tx[0], s.tx[1], 0, 0, 0, 0};
        for (int r = 0; r < 6; ++r)
          for (int c = 0; c < 6; ++c) expected += u[r] * a[r][c] * v[c];
      }
      CHECK(scalar[i] == doctest::Approx(expected).epsilon(1e-12).scale(1e-9));
    }

    if (!isa_available(KernelIsa::kAvx2)) return;
    std::vector<double> wide(pairs.size());
    chord_weight_batch_avx2(batch, kp, wide.data());
    double worst = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      CHECK((scalar[i] == 0.0) == (wide[i] == 0.0));
      if (scalar[i] != 0.0) worst = std::max(worst, std::abs(wide[i] - scalar[i]) / std::abs(scalar[i]));
    }
    CAPTURE(worst);
    CHECK(worst < 1e-13);

    std::vector<double> x(257), ys(257), yw(257);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = -700.0 + 2.7 * static_cast<double>(i);
    exp_batch_scalar(x.data(), ys.data(), x.size());
    exp_batch_avx2(x.data(), yw.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(yw[i] == doctest::Approx(ys[i]).epsilon(1e-14));
  }

  TEST_CASE("dispatcher honors a forced ISA") {
    const auto before = active_isa();
    set_kernel_isa(KernelIsa::kScalar);
    CHECK(active_isa() == KernelIsa::kScalar);
    set_kernel_isa(before);
    CHECK(active_isa() == before);
  }
}
