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
#include <string>
#include <vector>

#include <json.hpp>

#include "vassiliev/anomaly.hpp"
#include "vassiliev/integrator.hpp"
#include "vassiliev/link.hpp"

namespace vassiliev {

struct InvariantOptions {
  int degree = 2;
  double epsilon = 0.15;
  std::vector<std::int64_t> budgets;  // per degree 1..degree; missing entries use `budget`
  std::int64_t budget = 200000;
  std::uint64_t seed = 1;
  int shards = 64;
  int workers = 1;
  double target_error = 0;
  int min_window_radius = 0;  // the quotient window grows from here when needed
  bool include_correction = true;
  CorrectionOptions correction;
  std::vector<std::int64_t> correction_budgets;  // per degree, as `budgets`

  std::int64_t budget_for(int n) const;
  std::int64_t correction_budget_for(int n) const;
  PropagatorParams params() const;
};

/// Settings from the link file, then the run-config JSON (unknown keys are
/// rejected with std::invalid_argument).
InvariantOptions options_from_json(const nlohmann::json& config, const Link& link);
nlohmann::json to_json(const InvariantOptions& opt);

struct Coordinate {
  std::string generator;  // canonical key of the quotient basis element
  double value = 0;
  double std_error = 0;
};

struct DegreeResult {
  int degree = 0;
  std::map<std::string, EstimateTerm> terms;  // V_n by diagram class, corrections included
  std::vector<Coordinate> coordinates;         // V_n in the quotient basis
  int window_radius = 0;
  std::int64_t samples = 0;
  bool converged = true;
  CorrectionResult correction;
  double seconds = 0;
};

struct InvariantResult {
  std::vector<DegreeResult> degrees;  // 0..degree

  bool converged() const;
  /// Timings are included only when asked, so reports can be compared byte
  /// for byte.
  nlohmann::json to_json(bool timings) const;
};

/// V(L) up to the requested degree: per degree the sum over all diagrams
/// of the estimates, minus the anomaly correction, scaled by 1/2^n and
/// projected onto the quotient basis.
InvariantResult assemble_V(const Link& link, const InvariantOptions& opt);

}  // namespace vassiliev
