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

#include <vector>

namespace vassiliev {

/// +1 or -1 for a permutation of 0..n-1.
int permutation_parity(std::vector<int> p);

/// Value of w_0 ^ ... ^ w_{e-1} on a frame f_0..f_{2e-1}, where
/// w[k][i][j] = w_k(f_i, f_j). When `magnitude` is given it receives the
/// sum of absolute values of the expansion terms.
double wedge_value(const std::vector<std::vector<std::vector<double>>>& w, double* magnitude = nullptr);

}  // namespace vassiliev
