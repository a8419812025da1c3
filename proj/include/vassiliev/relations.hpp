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

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vassiliev/formal_sum.hpp"
#include "vassiliev/surface.hpp"

namespace vassiliev {

class WindowTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chord diagrams whose gauge-fixed arc windings all satisfy
/// |p|, |q| <= radius, on cores with the given classes.
struct WindingWindow {
  int radius = 0;
  std::vector<Winding> core_classes{Winding{}};

  int core_count() const { return static_cast<int>(core_classes.size()); }
  bool contains(const SurfaceDiagram& d) const;
};

/// Canonical surface diagrams of degree n with t internal vertices whose
/// skeleton has the window's cores and whose canonical form lies in the
/// window. Sorted by key.
std::vector<SurfaceDiagram> window_diagrams(int n, int t, const WindingWindow& w);

using SparseRow = std::map<int, Rational>;

/// The quotient of the span of degree-n chord diagrams in a window by the
/// 4T relations inside it.
///
/// Each 4T relation is the difference of the STU expansions of a
/// one-vertex diagram at two of its legs. Pivot columns are eliminated;
/// the remaining generators form the basis.
struct RelationBasis {
  int degree = 0;
  WindingWindow window;
  std::vector<SurfaceDiagram> generators;
  std::map<std::string, int> index;  // canonical key -> generator
  std::vector<SparseRow> relations;  // as generated, nonzero only
  std::map<int, SparseRow> pivots;   // echelon rows, lowest column is the pivot
  std::vector<int> basis;            // generator indices of non-pivot columns
  std::vector<std::string> dropped;  // relations that left the window

  std::size_t dimension() const { return basis.size(); }
  /// Reduces a row modulo the pivot rows.
  SparseRow reduce(SparseRow row) const;
};

RelationBasis relation_basis(int n, const WindingWindow& w);

/// Coordinates in the quotient basis; diagrams with internal vertices are
/// reduced to chords first. Throws WindowTooSmallError for a chord diagram
/// outside the generators.
std::vector<Rational> normal_form(const RationalSum& s, const RelationBasis& b);

/// Sign pattern (I, H, X) under which the three expansions of an internal
/// four-valent hub sum to zero in the quotient.
inline constexpr int kIhxSigns[3] = {1, -1, -1};

struct RelationAudit {
  int checked = 0;
  int failed = 0;
  std::vector<std::string> failures;
  bool ok() const { return failed == 0; }
};

/// AS: every diagram of degree b.degree with internal vertices whose arcs
/// lie within `source_radius`, reduced together with its copy reversed at
/// one internal vertex. Sums are evaluated in `b`, whose window should be
/// at least one step wider so the 4T relations they need are present.
/// Throws std::invalid_argument when source_radius >= b.window.radius.
RelationAudit verify_as(const RelationBasis& b, int source_radius);
/// IHX: the signed sum of the three expansions of every internal edge
/// collapse, sources chosen as for verify_as.
RelationAudit verify_ihx(const RelationBasis& b, int source_radius);

}  // namespace vassiliev
