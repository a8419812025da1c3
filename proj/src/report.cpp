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

#include "vassiliev/report.hpp"

#ifndef VASSILIEV_VERSION
#define VASSILIEV_VERSION "0.0.0"
#endif

namespace vassiliev {

const char* code_version() { return VASSILIEV_VERSION; }

nlohmann::json RunReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& c : checks) {
    checks_json.push_back(c.to_json());
    all_pass = all_pass && c.pass;
  }
  nlohmann::json j = {{"schema", kReportSchema},
                      {"schema_version", kReportSchemaVersion},
                      {"code_version", code_version()},
                      {"command", command},
                      {"inputs", inputs},
                      {"results", results},
                      {"checks", checks_json},
                      {"seed", seed},
                      {"exit_code", exit_code}};
  if (!checks.empty()) j["all_pass"] = all_pass;
  if (timings) j["timings"] = *timings;
  return j;
}

std::string RunReport::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace vassiliev
