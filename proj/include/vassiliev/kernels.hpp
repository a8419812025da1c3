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

#include <cstddef>

#include "vassiliev/geometry.hpp"

namespace vassiliev {

/// Structure-of-arrays input for chord weights. Endpoint a is the edge
/// tail, b the head; (tx, ty) are horizontal tangent components.
struct ChordBatch {
  const double* xa;
  const double* ya;
  const double* ha;
  const double* txa;
  const double* tya;
  const double* xb;
  const double* yb;
  const double* hb;
  const double* txb;
  const double* tyb;
  std::size_t size = 0;
};

struct KernelParams {
  double r0 = 0;
  double delta = 0;
  double scale = 0;  // Thom normalization
  BumpProfile profile = BumpProfile::kStandard;

  static KernelParams from(const PropagatorParams& p);
};

/// out[i] = omega(a_i, b_i) evaluated on (X_b, X_a), i.e.
/// sign(ha - hb) * thom_density(b - a) * det[Ta, Tb], and 0 outside U_n
/// or inside N.
void chord_weight_batch_scalar(const ChordBatch& in, const KernelParams& p, double* out);
void exp_batch_scalar(const double* x, double* y, std::size_t n);

#if defined(__x86_64__) || defined(__i386__)
void chord_weight_batch_avx2(const ChordBatch& in, const KernelParams& p, double* out);
void exp_batch_avx2(const double* x, double* y, std::size_t n);
#endif

enum class KernelIsa { kScalar, kAvx2 };

const char* to_string(KernelIsa isa);
bool isa_available(KernelIsa isa);
/// Best available ISA, unless overridden by set_kernel_isa.
KernelIsa active_isa();
/// Forces an ISA; throws std::invalid_argument if unavailable.
void set_kernel_isa(KernelIsa isa);

void chord_weight_batch(const ChordBatch& in, const KernelParams& p, double* out);

}  // namespace vassiliev
