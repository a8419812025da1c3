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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vassiliev/invariant.hpp"
#include "vassiliev/link.hpp"

namespace vassiliev {

class UnknownSuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One verdict with the number it was decided on.
struct CheckOutcome {
  std::string name;
  bool pass = false;
  double measured = 0;
  double tolerance = 0;
  std::string detail;

  nlohmann::json to_json() const;
};

struct CheckConfig {
  std::vector<Link> links;                     // single-link properties
  std::vector<std::pair<Link, Link>> pairs;    // isotopic presentations
  std::vector<Link> singular;                  // links with marked double points
  InvariantOptions invariant;
  double sigma = 3;           // multiple of the combined standard error
  double relative_tol = 1e-9; // for quantities that vanish identically
  int points = 200;           // sampled configurations or directions
  std::uint64_t seed = 1;
};

/// Reads a check config. Link paths are resolved against `base_dir`.
/// Keys: links, pairs, singular, invariant (as a run config), sigma,
/// relative_tol, points, seed.
CheckConfig check_config_from_json(const nlohmann::json& j, const std::string& base_dir);

const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws UnknownSuiteError for other names.
std::vector<CheckOutcome> run_suite(const std::string& suite, const CheckConfig& config);

/// |a - b| <= sigma * sqrt(sa^2 + sb^2), with exact equality required when
/// both errors vanish.
bool agree(double a, double sa, double b, double sb, double sigma);

/// Largest standardized coordinate difference between two results, over
/// all degrees; the second value is false if the bases differ.
std::pair<double, bool> max_deviation(const InvariantResult& a, const InvariantResult& b);

}  // namespace vassiliev
