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

#include <random>
#include <string>
#include <vector>

#include "vassiliev/checks.hpp"

namespace vassiliev::detail {

double uniform(std::mt19937_64& g);
const Link& first_link(const CheckConfig& c, const std::string& suite);
CheckOutcome verdict(std::string name, double measured, double tolerance, std::string detail);

std::vector<CheckOutcome> finite_type(const CheckConfig& c);
std::vector<CheckOutcome> universality(const CheckConfig& c);
std::vector<CheckOutcome> isotopy(const CheckConfig& c);
std::vector<CheckOutcome> anomaly_closed(const CheckConfig& c);
std::vector<CheckOutcome> correction_independence(const CheckConfig& c);

}  // namespace vassiliev::detail
