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

#include "vassiliev/forms.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace vassiliev {

int permutation_parity(std::vector<int> p) {
  int parity = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[p[i]]);
      parity = -parity;
    }
  return parity;
}

double wedge_value(const std::vector<std::vector<std::vector<double>>>& w, double* magnitude) {
  const int e = static_cast<int>(w.size());
  const int dim = 2 * e;
  std::vector<int> order;
  std::vector<bool> used(dim, false);
  double total = 0, abs_total = 0;
  std::function<void(int, double)> rec = [&](int k, double prod) {
    if (k == e) {
      total += permutation_parity(order) * prod;
      abs_total += std::abs(prod);
      return;
    }
    for (int i = 0; i < dim; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < dim; ++j) {
        if (used[j] || w[k][i][j] == 0) continue;
        used[i] = used[j] = true;
        order.push_back(i);
        order.push_back(j);
        rec(k + 1, prod * w[k][i][j]);
        order.resize(order.size() - 2);
        used[i] = used[j] = false;
      }
    }
  };
  rec(0, 1.0);
  if (magnitude) *magnitude = abs_total;
  return total;
}

}  // namespace vassiliev
