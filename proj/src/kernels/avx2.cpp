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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "spreadrec/kernels.hpp"

namespace spreadrec::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Nibble lookup popcount (Mula et al.), summed into 64-bit lanes.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                        _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

}  // namespace

double sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* p = x.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
  }
  if (i + 4 <= n) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    i += 4;
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += p[i];
  return total;
}

double gather_sum(std::span<const double> values,
                  std::span<const std::uint32_t> indices) {
  const std::size_t n = indices.size();
  const double* base = values.data();
  const auto* idx = reinterpret_cast<const __m128i*>(indices.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i i0 = _mm_loadu_si128(idx + i / 4);
    const __m128i i1 = _mm_loadu_si128(idx + i / 4 + 1);
    acc0 = _mm256_add_pd(acc0, _mm256_i32gather_pd(base, i0, 8));
    acc1 = _mm256_add_pd(acc1, _mm256_i32gather_pd(base, i1, 8));
  }
  if (i + 4 <= n) {
    acc0 = _mm256_add_pd(acc0,
                         _mm256_i32gather_pd(base, _mm_loadu_si128(idx + i / 4), 8));
    i += 4;
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += base[indices[i]];
  return total;
}

void scale(std::span<double> x, double factor) {
  const std::size_t n = x.size();
  double* p = x.data();
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), f));
  }
  for (; i < n; ++i) p[i] *= factor;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  const auto* pa = reinterpret_cast<const __m256i*>(a.data());
  const auto* pb = reinterpret_cast<const __m256i*>(b.data());
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_and_si256(_mm256_loadu_si256(pa + i / 4),
                                       _mm256_loadu_si256(pb + i / 4));
    acc = _mm256_add_epi64(acc, popcount_epi64(v));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) count += std::popcount(a[i] & b[i]);
  return count;
}

}  // namespace spreadrec::kernels::avx2
