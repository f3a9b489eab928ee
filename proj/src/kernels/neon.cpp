// Copyright 2026 The spreadrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AArch64 only; Advanced SIMD is part of the base ISA there.

#include <arm_neon.h>

#include <bit>

#include "spreadrec/kernels.hpp"

namespace spreadrec::kernels::neon {

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* p = x.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(p + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(p + i + 2));
  }
  double total = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) total += p[i];
  return total;
}

// No hardware gather: pairs are assembled lane by lane.
double gather_sum(std::span<const double> values,
                  std::span<const std::uint32_t> indices) {
  const std::size_t n = indices.size();
  const double* base = values.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t a = vdupq_n_f64(base[indices[i]]);
    a = vsetq_lane_f64(base[indices[i + 1]], a, 1);
    float64x2_t b = vdupq_n_f64(base[indices[i + 2]]);
    b = vsetq_lane_f64(base[indices[i + 3]], b, 1);
    acc0 = vaddq_f64(acc0, a);
    acc1 = vaddq_f64(acc1, b);
  }
  double total = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) total += base[indices[i]];
  return total;
}

void scale(std::span<double> x, double factor) {
  const std::size_t n = x.size();
  double* p = x.data();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(p + i, vmulq_n_f64(vld1q_f64(p + i), factor));
  for (; i < n; ++i) p[i] *= factor;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint8x16_t v = vreinterpretq_u8_u64(
        vandq_u64(vld1q_u64(a.data() + i), vld1q_u64(b.data() + i)));
    acc = vpadalq_u32(acc, vpaddlq_u16(vpaddlq_u8(vcntq_u8(v))));
  }
  std::uint64_t count = vaddvq_u64(acc);
  for (; i < n; ++i) count += std::popcount(a[i] & b[i]);
  return count;
}

}  // namespace spreadrec::kernels::neon
