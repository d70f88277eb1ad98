/* Copyright 2026 The fastconv Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <atomic>
#include <stdexcept>
#include <string>

#include "fastconv/simd.hpp"

namespace fastconv::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "?";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(FASTCONV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(FASTCONV_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (isa_supported(isa)) out.push_back(isa);
  return out;
}

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) +
                                " is not supported on this host");
  switch (isa) {
#if defined(FASTCONV_HAVE_AVX2)
    case Isa::avx2:
      return avx2::kTable;
#endif
#if defined(FASTCONV_HAVE_NEON)
    case Isa::neon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

namespace {

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels(detected_isa())};
  return slot;
}

}  // namespace

void set_active_isa(Isa isa) { active_slot().store(&kernels(isa)); }

Isa active_isa() { return active_slot().load()->isa; }

const KernelTable& active_kernels() { return *active_slot().load(); }

}  // namespace fastconv::simd
