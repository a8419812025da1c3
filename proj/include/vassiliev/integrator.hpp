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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vassiliev/diagram.hpp"
#include "vassiliev/geometry.hpp"
#include "vassiliev/link.hpp"
#include "vassiliev/surface.hpp"

namespace vassiliev {

class DimensionMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A point of the configuration space of a diagram on a link: one curve
/// parameter per vertex (read for external vertices) and one lifted point
/// per vertex (read for internal vertices).
struct Configuration {
  std::vector<double> param;
  std::vector<Vec3> interior;
};

struct IntegrandValue {
  bool zero = true;
  double form_value = 0;     // the e-fold product form on the vertex-ordered frame
  int orientation_sign = 1;  // parity of the oriented frame against the vertex order
  double value = 0;          // orientation_sign * form_value
  SurfaceDiagram diagram;    // realized class; meaningful when !zero
};

/// Pullback of the product of edge propagators at one configuration. The
/// frame has one core tangent per external vertex and three coordinate
/// directions per internal vertex, in vertex order. The oriented frame
/// lists, edge by edge, the head slot then the tail slot for chord
/// diagrams; with internal vertices the product form vanishes identically
/// because no propagator has a height component.
IntegrandValue integrand(const AbstractDiagram& ka, const Configuration& config, const Link& link,
                         const PropagatorParams& params);

/// An axis-parallel cell [s0, s0 + ls) x [t0, t0 + lt) of parameter space,
/// read mod 1, for endpoints on components (comp_a, comp_b).
struct SupportBox {
  int comp_a = 0;
  int comp_b = 0;
  double s0 = 0, ls = 0;
  double t0 = 0, lt = 0;

  double area() const { return ls * lt; }
  bool contains(double s, double t) const;
};

/// Boxes covering every parameter pair whose chord weight can be nonzero.
/// Ordered pairs: boxes for (b, a) are the transposes of those for (a, b).
std::vector<SupportBox> support_boxes(const Link& link, int comp_a, int comp_b, const PropagatorParams& params,
                                      int cells = 2048);

struct EstimateOptions {
  std::int64_t budget = 200000;  // samples per diagram
  std::uint64_t seed = 1;
  int shards = 64;
  int workers = 1;
  double target_error = 0;       // standard error target per term, 0 = none
};

struct EstimateTerm {
  SurfaceDiagram diagram;
  double value = 0;
  double std_error = 0;
};

/// Per-shard term sums. Shard means are independent and identically
/// distributed, which is what standard errors and basis projections use.
struct ShardTable {
  std::map<std::string, SurfaceDiagram> diagrams;
  std::vector<std::map<std::string, double>> shards;

  void merge(const ShardTable& other);
};

struct EstimatorOutput {
  std::map<std::string, EstimateTerm> terms;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  bool converged = true;
  ShardTable table;

  nlohmann::json to_json() const;
};

/// Summaries from a shard table.
std::map<std::string, EstimateTerm> summarize(const ShardTable& table);

/// Monte Carlo estimate of the configuration-space integral of one
/// diagram, divided by its automorphism order, accumulated by class.
/// Deterministic in (link, ka, params, budget, seed, shards); independent
/// of the worker count.
EstimatorOutput estimate(const Link& link, const AbstractDiagram& ka, const PropagatorParams& params,
                         const EstimateOptions& opt);

}  // namespace vassiliev
