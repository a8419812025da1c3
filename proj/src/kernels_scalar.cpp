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

#include <cmath>

#include "vassiliev/kernels.hpp"

namespace vassiliev {

KernelParams KernelParams::from(const PropagatorParams& p) {
  return {p.r0(), p.delta(), p.thom_scale(), p.profile};
}

void exp_batch_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void chord_weight_batch_scalar(const ChordBatch& in, const KernelParams& p, double* out) {
  const double inv_r02 = 1.0 / (p.r0 * p.r0);
  for (std::size_t i = 0; i < in.size; ++i) {
    double dx = in.xb[i] - in.xa[i];
    double dy = in.yb[i] - in.ya[i];
    dx -= std::floor(dx + 0.5);
    dy -= std::floor(dy + 0.5);
    const double s2 = (dx * dx + dy * dy) * inv_r02;
    const double dh = in.ha[i] - in.hb[i];
    if (s2 >= 1.0 || std::abs(dh) < p.delta) {
      out[i] = 0.0;
      continue;
    }
    const double u = 1.0 - s2;
    const double arg = p.profile == BumpProfile::kStandard ? -1.0 / u : -1.0 / (u * u);
    const double det = in.txa[i] * in.tyb[i] - in.tya[i] * in.txb[i];
    out[i] = (dh > 0 ? 1.0 : -1.0) * p.scale * std::exp(arg) * det;
  }
}

}  // namespace vassiliev
