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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vassiliev/checks.hpp"

namespace vassiliev {

inline constexpr const char* kReportSchema = "vassiliev.run-report";
inline constexpr int kReportSchemaVersion = 1;

/// Version string compiled into the library.
const char* code_version();

/// What one CLI invocation did. The JSON form is deterministic: keys are
/// sorted and wall-clock data appears only when `timings` is set.
struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<CheckOutcome> checks;
  std::uint64_t seed = 0;
  int exit_code = 0;
  std::optional<nlohmann::json> timings;

  nlohmann::json to_json() const;
  /// Two-space indented JSON followed by a newline.
  std::string dump() const;
};

}  // namespace vassiliev
