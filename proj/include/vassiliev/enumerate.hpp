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

#include <stdexcept>
#include <vector>

#include "vassiliev/diagram.hpp"

namespace vassiliev {

class ResourceBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDegreeCap = 4;

/// One representative per isomorphism class of valid diagrams of degree n
/// on l ordered cores, in canonical form with ascending cyclic orders.
/// Self-loops are never generated; parallel edges are.
std::vector<AbstractDiagram> enumerate(int n, int l, int degree_cap = kDefaultDegreeCap);

}  // namespace vassiliev
