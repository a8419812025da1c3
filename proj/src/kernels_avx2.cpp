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

#include "vassiliev/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace vassiliev {
namespace {

#define VASSILIEV_AVX2 __attribute__((target("avx2,fma")))

// exp(x) by k = round(x / ln 2), r = x - k ln 2, Taylor polynomial of
// degree 13 on |r| <= ln 2 / 2, then scaling by 2^k through the exponent
// bits. Results below the normal range flush to zero.
VASSILIEV_AVX2 inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, ln2_hi, x);
  r = _mm256_fnmadd_pd(k, ln2_lo, r);

  static constexpr double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                                 1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                                 1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                                 1.0 / 24.0,         1.0 / 6.0,         0.5,
                                 1.0,                1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

  const __m256d biased = _mm256_add_pd(k, _mm256_set1_pd(1023.0));
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  __m256i bits = _mm256_castpd_si256(_mm256_add_pd(biased, magic));
  bits = _mm256_slli_epi64(bits, 52);
  __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));

  const __m256d underflow = _mm256_cmp_pd(biased, _mm256_set1_pd(1.0), _CMP_LT_OQ);
  const __m256d overflow = _mm256_cmp_pd(biased, _mm256_set1_pd(2046.0), _CMP_GT_OQ);
  result = _mm256_blendv_pd(result, _mm256_setzero_pd(), underflow);
  result = _mm256_blendv_pd(result, _mm256_set1_pd(__builtin_inf()), overflow);
  const __m256d nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  return _mm256_blendv_pd(result, x, nan);
}

}  // namespace

VASSILIEV_AVX2 void exp_batch_avx2(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, exp_pd(_mm256_loadu_pd(x + i)));
  if (i < n) {
    double in[4] = {0, 0, 0, 0}, out[4];
    for (std::size_t j = i; j < n; ++j) in[j - i] = x[j];
    _mm256_storeu_pd(out, exp_pd(_mm256_loadu_pd(in)));
    for (std::size_t j = i; j < n; ++j) y[j] = out[j - i];
  }
}

VASSILIEV_AVX2 void chord_weight_batch_avx2(const ChordBatch& in, const KernelParams& p, double* out) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d inv_r02 = _mm256_set1_pd(1.0 / (p.r0 * p.r0));
  const __m256d delta = _mm256_set1_pd(p.delta);
  const __m256d scale = _mm256_set1_pd(p.scale);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const bool sharp = p.profile == BumpProfile::kSharp;

  std::size_t i = 0;
  for (; i + 4 <= in.size; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(in.xb + i), _mm256_loadu_pd(in.xa + i));
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(in.yb + i), _mm256_loadu_pd(in.ya + i));
    dx = _mm256_sub_pd(dx, _mm256_floor_pd(_mm256_add_pd(dx, half)));
    dy = _mm256_sub_pd(dy, _mm256_floor_pd(_mm256_add_pd(dy, half)));
    const __m256d s2 = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), inv_r02);
    const __m256d dh = _mm256_sub_pd(_mm256_loadu_pd(in.ha + i), _mm256_loadu_pd(in.hb + i));
    const __m256d abs_dh = _mm256_andnot_pd(sign_mask, dh);
    const __m256d live = _mm256_and_pd(_mm256_cmp_pd(s2, one, _CMP_LT_OQ),
                                       _mm256_cmp_pd(abs_dh, delta, _CMP_GE_OQ));
    if (_mm256_movemask_pd(live) == 0) {
      _mm256_storeu_pd(out + i, _mm256_setzero_pd());
      continue;
    }
    // Dead lanes get u = 1 so the exponential stays finite.
    const __m256d u = _mm256_blendv_pd(one, _mm256_sub_pd(one, s2), live);
    const __m256d denom = sharp ? _mm256_mul_pd(u, u) : u;
    const __m256d arg = _mm256_xor_pd(_mm256_div_pd(one, denom), sign_mask);
    const __m256d det = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(in.txa + i), _mm256_loadu_pd(in.tyb + i)),
                                      _mm256_mul_pd(_mm256_loadu_pd(in.tya + i), _mm256_loadu_pd(in.txb + i)));
    const __m256d sgn = _mm256_or_pd(_mm256_and_pd(dh, sign_mask), one);
    __m256d w = _mm256_mul_pd(_mm256_mul_pd(scale, exp_pd(arg)), det);
    w = _mm256_xor_pd(w, _mm256_and_pd(sgn, sign_mask));
    _mm256_storeu_pd(out + i, _mm256_and_pd(w, live));
  }
  if (i < in.size) {
    ChordBatch rest = in;
    rest.xa += i, rest.ya += i, rest.ha += i, rest.txa += i, rest.tya += i;
    rest.xb += i, rest.yb += i, rest.hb += i, rest.txb += i, rest.tyb += i;
    rest.size = in.size - i;
    chord_weight_batch_scalar(rest, p, out + i);
  }
}

}  // namespace vassiliev

#endif
