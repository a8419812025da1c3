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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls the library code it is compared against.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vassiliev/diagram.hpp"
#include "vassiliev/geometry.hpp"

namespace oracle {

/// A diagram class found by exhaustive search: the lexicographically least
/// adjacency encoding over all core rotations and internal relabelings,
/// and the number of relabelings attaining it.
struct BruteClass {
  std::vector<int> core_sizes;
  std::vector<int> code;
  std::int64_t automorphisms = 0;
};

/// Every class of connected-to-core trivalent diagrams of degree n on l
/// cores, by brute-force generation of labeled multigraphs.
std::vector<BruteClass> brute_force_classes(int n, int l);

/// Class of a library diagram under the same brute-force encoding.
BruteClass classify(const vassiliev::AbstractDiagram& d);

struct ClosednessSample {
  double max_defect = 0;  // largest |d omega| component
  double scale = 0;       // largest |omega| / r0, the size of a derivative
  int points = 0;
};

/// d omega by central differences at random pairs inside the support.
ClosednessSample propagator_closedness(const vassiliev::PropagatorParams& p, int points, std::uint64_t seed);

}  // namespace oracle
