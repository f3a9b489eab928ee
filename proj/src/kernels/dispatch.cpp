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

#include <atomic>
#include <cstdlib>
#include <string>

#include "spreadrec/errors.hpp"
#include "spreadrec/kernels.hpp"

namespace spreadrec::kernels {

#define SPREADREC_DECLARE_KERNELS(ns)                                      \
  namespace ns {                                                           \
  double sum(std::span<const double>);                                     \
  double gather_sum(std::span<const double>,                               \
                    std::span<const std::uint32_t>);                       \
  void scale(std::span<double>, double);                                   \
  std::uint64_t and_popcount(std::span<const std::uint64_t>,               \
                             std::span<const std::uint64_t>);              \
  }

#ifdef SPREADREC_HAVE_AVX2
SPREADREC_DECLARE_KERNELS(avx2)
#endif
#ifdef SPREADREC_HAVE_NEON
SPREADREC_DECLARE_KERNELS(neon)
#endif
#undef SPREADREC_DECLARE_KERNELS

namespace {

constexpr KernelTable kScalarTable{&scalar::sum, &scalar::gather_sum,
                                   &scalar::scale, &scalar::and_popcount};
#ifdef SPREADREC_HAVE_AVX2
constexpr KernelTable kAvx2Table{&avx2::sum, &avx2::gather_sum, &avx2::scale,
                                 &avx2::and_popcount};
#endif
#ifdef SPREADREC_HAVE_NEON
constexpr KernelTable kNeonTable{&neon::sum, &neon::gather_sum, &neon::scale,
                                 &neon::and_popcount};
#endif

SimdLevel initial_level() {
  SimdLevel level = detected_level();
  if (const char* env = std::getenv("SPREADREC_SIMD")) {
    const std::string_view want(env);
    for (SimdLevel candidate :
         {SimdLevel::kScalar, SimdLevel::kAvx2, SimdLevel::kNeon}) {
      if (want == level_name(candidate) && level_supported(candidate)) {
        level = candidate;
      }
    }
  }
  return level;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{table_for(initial_level())};
  return table;
}

std::atomic<SimdLevel>& active_level_slot() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

std::string_view level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return "scalar";
    case SimdLevel::kAvx2:
      return "avx2";
    case SimdLevel::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return &kScalarTable;
    case SimdLevel::kAvx2:
#ifdef SPREADREC_HAVE_AVX2
      return &kAvx2Table;
#else
      return nullptr;
#endif
    case SimdLevel::kNeon:
#ifdef SPREADREC_HAVE_NEON
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

bool level_supported(SimdLevel level) {
  if (table_for(level) == nullptr) return false;
#if defined(SPREADREC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (level == SimdLevel::kAvx2) return __builtin_cpu_supports("avx2");
#endif
  return true;
}

SimdLevel detected_level() {
  if (level_supported(SimdLevel::kAvx2)) return SimdLevel::kAvx2;
  if (level_supported(SimdLevel::kNeon)) return SimdLevel::kNeon;
  return SimdLevel::kScalar;
}

SimdLevel active_level() { return active_level_slot().load(); }

void set_active_level(SimdLevel level) {
  if (!level_supported(level)) {
    throw ParameterError("SIMD level " + std::string(level_name(level)) +
                         " is not available on this machine");
  }
  active_table().store(table_for(level));
  active_level_slot().store(level);
}

double sum(std::span<const double> x) { return active_table().load()->sum(x); }

double gather_sum(std::span<const double> values,
                  std::span<const std::uint32_t> indices) {
  return active_table().load()->gather_sum(values, indices);
}

void scale(std::span<double> x, double factor) {
  active_table().load()->scale(x, factor);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  return active_table().load()->and_popcount(a, b);
}

}  // namespace spreadrec::kernels
