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

// Data-parallel inner loops. Each kernel has a scalar reference in
// kernels::scalar and vector variants (AVX2 on x86-64, NEON on AArch64).
// The free functions dispatch to the level chosen at startup: the best one
// the CPU supports, unless SPREADREC_SIMD=scalar|avx2|neon overrides it.
//
// Integer kernels are bit-identical across levels. Floating-point
// reductions use lane-wise partial sums in the vector variants, so they
// agree with the scalar reference only up to rounding.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace spreadrec::kernels {

enum class SimdLevel { kScalar, kAvx2, kNeon };

std::string_view level_name(SimdLevel level);

// True when this build contains the variant and the CPU can run it.
bool level_supported(SimdLevel level);

// Best supported level, ignoring the environment override.
SimdLevel detected_level();

SimdLevel active_level();

// Throws ParameterError when the level is not supported.
void set_active_level(SimdLevel level);

// RAII override of the active level, for tests and benchmarks.
class ScopedLevel {
 public:
  explicit ScopedLevel(SimdLevel level) : previous_(active_level()) {
    set_active_level(level);
  }
  ~ScopedLevel() { set_active_level(previous_); }
  ScopedLevel(const ScopedLevel&) = delete;
  ScopedLevel& operator=(const ScopedLevel&) = delete;

 private:
  SimdLevel previous_;
};

double sum(std::span<const double> x);

// sum of values[idx] over idx in indices.
double gather_sum(std::span<const double> values,
                  std::span<const std::uint32_t> indices);

void scale(std::span<double> x, double factor);

// popcount(a & b), a.size() == b.size().
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);

struct KernelTable {
  double (*sum)(std::span<const double>);
  double (*gather_sum)(std::span<const double>,
                       std::span<const std::uint32_t>);
  void (*scale)(std::span<double>, double);
  std::uint64_t (*and_popcount)(std::span<const std::uint64_t>,
                                std::span<const std::uint64_t>);
};

// Per-level tables; nullptr when the variant is not compiled in.
const KernelTable* table_for(SimdLevel level);

namespace scalar {
double sum(std::span<const double> x);
double gather_sum(std::span<const double> values,
                  std::span<const std::uint32_t> indices);
void scale(std::span<double> x, double factor);
std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);
}  // namespace scalar

}  // namespace spreadrec::kernels
