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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vassiliev/formal_sum.hpp"
#include "vassiliev/surface.hpp"

namespace vassiliev {

class StuObstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two resolutions of an internal vertex v onto the core through the
/// leg edge v - w. With the cyclic order at v written (leg, x, y), `t`
/// places the ends of y then x along the core where w was, `u` places x
/// then y. Vertex v and the external vertex w are reused for the new core
/// points; the leg edge is removed.
struct StuPair {
  SurfaceDiagram t;
  SurfaceDiagram u;
};

/// Throws DiagramError when `leg` does not join an internal vertex to an
/// external one, StuObstructionError when the input or either output has a
/// graph cycle with nonzero winding.
StuPair stu_resolve(const SurfaceDiagram& d, int leg);

/// t - u as a canonical formal sum.
RationalSum stu_expand(const SurfaceDiagram& d, int leg);

/// Edges joining an internal vertex to a core, ascending.
std::vector<int> legs(const AbstractDiagram& d);

enum class ExpansionOrder { kFirstLeg, kLastLeg, kRandomLeg };

struct ReduceOptions {
  ExpansionOrder order = ExpansionOrder::kFirstLeg;
  std::uint64_t seed = 0;
};

/// Repeated STU until only chord diagrams remain. Each input diagram is
/// expanded from its own cyclic orders, so a diagram and its reversal give
/// opposite results.
RationalSum reduce_to_chords(const SurfaceDiagram& d, const ReduceOptions& opt = {});
RationalSum reduce_to_chords(const RationalSum& s, const ReduceOptions& opt = {});

}  // namespace vassiliev
