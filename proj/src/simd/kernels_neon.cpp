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

// AArch64 variant. Uses separate vmulq/vaddq so results round exactly like
// the scalar reference.

#include <arm_neon.h>

#include "fastconv/simd.hpp"

namespace fastconv::simd::neon {
namespace {

void axpy_f32(float* y, const float* x, float a, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    vst1q_f32(y + j, vaddq_f32(vld1q_f32(y + j), vmulq_f32(va, vld1q_f32(x + j))));
  for (; j < n; ++j) y[j] += a * x[j];
}

void axpy_f64(double* y, const double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2)
    vst1q_f64(y + j, vaddq_f64(vld1q_f64(y + j), vmulq_f64(va, vld1q_f64(x + j))));
  for (; j < n; ++j) y[j] += a * x[j];
}

void axpy_f64_f32(double* y, const float* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const float32x4_t xs = vld1q_f32(x + j);
    const float64x2_t lo = vcvt_f64_f32(vget_low_f32(xs));
    const float64x2_t hi = vcvt_high_f64_f32(xs);
    vst1q_f64(y + j, vaddq_f64(vld1q_f64(y + j), vmulq_f64(va, lo)));
    vst1q_f64(y + j + 2, vaddq_f64(vld1q_f64(y + j + 2), vmulq_f64(va, hi)));
  }
  for (; j < n; ++j) y[j] += a * static_cast<double>(x[j]);
}

void gemm_f32(float* m, const float* u, const float* v, std::size_t rows,
              std::size_t inner, std::size_t cols, std::size_t ldu,
              std::size_t ldv, std::size_t ldm) {
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t c = 0; c < inner; ++c)
      axpy_f32(m + k * ldm, v + c * ldv, u[k * ldu + c], cols);
}

void gemm_f64(double* m, const double* u, const double* v, std::size_t rows,
              std::size_t inner, std::size_t cols, std::size_t ldu,
              std::size_t ldv, std::size_t ldm) {
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t c = 0; c < inner; ++c)
      axpy_f64(m + k * ldm, v + c * ldv, u[k * ldu + c], cols);
}

}  // namespace

const KernelTable kTable = {
    Isa::neon, &axpy_f32, &axpy_f64, &axpy_f64_f32, &gemm_f32, &gemm_f64,
};

}  // namespace fastconv::simd::neon
