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

#ifndef FASTCONV_SIMD_HPP_
#define FASTCONV_SIMD_HPP_

// Data-parallel inner loops with a scalar reference and per-ISA variants
// selected at runtime. Every variant performs the same multiplies and adds
// per output element in the same order (no fused multiply-add), so all
// variants are bit-identical to the scalar reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fastconv::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);

// Best ISA supported by both the build and the running CPU.
Isa detected_isa();
bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();

// Process-wide selection used by the dispatching entry points below.
// Throws std::invalid_argument if the ISA is not supported here.
void set_active_isa(Isa isa);
Isa active_isa();

// y[j] += a * x[j]
using AxpyF32 = void (*)(float* y, const float* x, float a, std::size_t n);
using AxpyF64 = void (*)(double* y, const double* x, double a, std::size_t n);
// y[j] += a * double(x[j])
using AxpyF64F32 = void (*)(double* y, const float* x, double a,
                            std::size_t n);
// M[k, :] += sum_c U[k, c] * V[c, :], c ascending. Row-major with leading
// dimensions ldu, ldv, ldm.
using GemmF32 = void (*)(float* m, const float* u, const float* v,
                         std::size_t rows, std::size_t inner,
                         std::size_t cols, std::size_t ldu, std::size_t ldv,
                         std::size_t ldm);
using GemmF64 = void (*)(double* m, const double* u, const double* v,
                         std::size_t rows, std::size_t inner,
                         std::size_t cols, std::size_t ldu, std::size_t ldv,
                         std::size_t ldm);

struct KernelTable {
  Isa isa;
  AxpyF32 axpy_f32;
  AxpyF64 axpy_f64;
  AxpyF64F32 axpy_f64_f32;
  GemmF32 gemm_f32;
  GemmF64 gemm_f64;
};

// Table for a specific ISA; throws if unsupported.
const KernelTable& kernels(Isa isa);
const KernelTable& active_kernels();

namespace scalar {
extern const KernelTable kTable;
}
#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable kTable;
}
#endif

inline void axpy(std::span<float> y, std::span<const float> x, float a) {
  active_kernels().axpy_f32(y.data(), x.data(), a, y.size());
}
inline void axpy(std::span<double> y, std::span<const double> x, double a) {
  active_kernels().axpy_f64(y.data(), x.data(), a, y.size());
}
inline void axpy(std::span<double> y, std::span<const float> x, double a) {
  active_kernels().axpy_f64_f32(y.data(), x.data(), a, y.size());
}

inline void gemm_accumulate(float* m, const float* u, const float* v,
                            std::size_t rows, std::size_t inner,
                            std::size_t cols, std::size_t ldu,
                            std::size_t ldv, std::size_t ldm) {
  active_kernels().gemm_f32(m, u, v, rows, inner, cols, ldu, ldv, ldm);
}
inline void gemm_accumulate(double* m, const double* u, const double* v,
                            std::size_t rows, std::size_t inner,
                            std::size_t cols, std::size_t ldu,
                            std::size_t ldv, std::size_t ldm) {
  active_kernels().gemm_f64(m, u, v, rows, inner, cols, ldu, ldv, ldm);
}

// RAII override of the active ISA, restoring the previous one on exit.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_active_isa(isa); }
  ~ScopedIsa() { set_active_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace fastconv::simd

#endif  // FASTCONV_SIMD_HPP_
