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

#include <atomic>
#include <stdexcept>

#include "vassiliev/kernels.hpp"

namespace vassiliev {
namespace {

KernelIsa detect() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return KernelIsa::kAvx2;
#endif
  return KernelIsa::kScalar;
}

std::atomic<KernelIsa>& selected() {
  static std::atomic<KernelIsa> isa{detect()};
  return isa;
}

}  // namespace

const char* to_string(KernelIsa isa) { return isa == KernelIsa::kAvx2 ? "avx2" : "scalar"; }

bool isa_available(KernelIsa isa) { return isa == KernelIsa::kScalar || detect() == KernelIsa::kAvx2; }

KernelIsa active_isa() { return selected().load(); }

void set_kernel_isa(KernelIsa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("ISA not available: ") + to_string(isa));
  selected().store(isa);
}

void chord_weight_batch(const ChordBatch& in, const KernelParams& p, double* out) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_isa() == KernelIsa::kAvx2) {
    chord_weight_batch_avx2(in, p, out);
    return;
  }
#endif
  chord_weight_batch_scalar(in, p, out);
}

}  // namespace vassiliev
