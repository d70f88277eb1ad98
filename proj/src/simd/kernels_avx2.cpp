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

// Compiled with -mavx2 (and without -mfma). Only reached after a runtime
// cpuid check in dispatch.cpp.

#include <immintrin.h>

#include "fastconv/simd.hpp"

namespace fastconv::simd::avx2 {
namespace {

void axpy_f32(float* y, const float* x, float a, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256 p = _mm256_mul_ps(va, _mm256_loadu_ps(x + j));
    _mm256_storeu_ps(y + j, _mm256_add_ps(_mm256_loadu_ps(y + j), p));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

void axpy_f64(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(y + j, _mm256_add_pd(_mm256_loadu_pd(y + j), p));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

void axpy_f64_f32(double* y, const float* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256 xs = _mm256_loadu_ps(x + j);
    const __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(xs));
    const __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(xs, 1));
    _mm256_storeu_pd(y + j,
                     _mm256_add_pd(_mm256_loadu_pd(y + j), _mm256_mul_pd(va, lo)));
    _mm256_storeu_pd(y + j + 4, _mm256_add_pd(_mm256_loadu_pd(y + j + 4),
                                              _mm256_mul_pd(va, hi)));
  }
  for (; j < n; ++j) y[j] += a * static_cast<double>(x[j]);
}

// 4 x 16 register block: 8 accumulators, the inner index c runs innermost so
// each output sees its products in ascending c, exactly like the scalar loop.
void gemm_f32(float* m, const float* u, const float* v, std::size_t rows,
              std::size_t inner, std::size_t cols, std::size_t ldu,
              std::size_t ldv, std::size_t ldm) {
  std::size_t k = 0;
  for (; k + 4 <= rows; k += 4) {
    std::size_t j = 0;
    for (; j + 16 <= cols; j += 16) {
      __m256 acc[4][2];
      for (int r = 0; r < 4; ++r) {
        acc[r][0] = _mm256_loadu_ps(m + (k + r) * ldm + j);
        acc[r][1] = _mm256_loadu_ps(m + (k + r) * ldm + j + 8);
      }
      for (std::size_t c = 0; c < inner; ++c) {
        const __m256 v0 = _mm256_loadu_ps(v + c * ldv + j);
        const __m256 v1 = _mm256_loadu_ps(v + c * ldv + j + 8);
        for (int r = 0; r < 4; ++r) {
          const __m256 a = _mm256_broadcast_ss(u + (k + r) * ldu + c);
          acc[r][0] = _mm256_add_ps(acc[r][0], _mm256_mul_ps(a, v0));
          acc[r][1] = _mm256_add_ps(acc[r][1], _mm256_mul_ps(a, v1));
        }
      }
      for (int r = 0; r < 4; ++r) {
        _mm256_storeu_ps(m + (k + r) * ldm + j, acc[r][0]);
        _mm256_storeu_ps(m + (k + r) * ldm + j + 8, acc[r][1]);
      }
    }
    if (j < cols) {
      for (int r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < inner; ++c)
          axpy_f32(m + (k + r) * ldm + j, v + c * ldv + j,
                   u[(k + r) * ldu + c], cols - j);
    }
  }
  for (; k < rows; ++k)
    for (std::size_t c = 0; c < inner; ++c)
      axpy_f32(m + k * ldm, v + c * ldv, u[k * ldu + c], cols);
}

void gemm_f64(double* m, const double* u, const double* v, std::size_t rows,
              std::size_t inner, std::size_t cols, std::size_t ldu,
              std::size_t ldv, std::size_t ldm) {
  std::size_t k = 0;
  for (; k + 4 <= rows; k += 4) {
    std::size_t j = 0;
    for (; j + 8 <= cols; j += 8) {
      __m256d acc[4][2];
      for (int r = 0; r < 4; ++r) {
        acc[r][0] = _mm256_loadu_pd(m + (k + r) * ldm + j);
        acc[r][1] = _mm256_loadu_pd(m + (k + r) * ldm + j + 4);
      }
      for (std::size_t c = 0; c < inner; ++c) {
        const __m256d v0 = _mm256_loadu_pd(v + c * ldv + j);
        const __m256d v1 = _mm256_loadu_pd(v + c * ldv + j + 4);
        for (int r = 0; r < 4; ++r) {
          const __m256d a = _mm256_broadcast_sd(u + (k + r) * ldu + c);
          acc[r][0] = _mm256_add_pd(acc[r][0], _mm256_mul_pd(a, v0));
          acc[r][1] = _mm256_add_pd(acc[r][1], _mm256_mul_pd(a, v1));
        }
      }
      for (int r = 0; r < 4; ++r) {
        _mm256_storeu_pd(m + (k + r) * ldm + j, acc[r][0]);
        _mm256_storeu_pd(m + (k + r) * ldm + j + 4, acc[r][1]);
      }
    }
    if (j < cols) {
      for (int r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < inner; ++c)
          axpy_f64(m + (k + r) * ldm + j, v + c * ldv + j,
                   u[(k + r) * ldu + c], cols - j);
    }
  }
  for (; k < rows; ++k)
    for (std::size_t c = 0; c < inner; ++c)
      axpy_f64(m + k * ldm, v + c * ldv, u[k * ldu + c], cols);
}

}  // namespace

const KernelTable kTable = {
    Isa::avx2, &axpy_f32, &axpy_f64, &axpy_f64_f32, &gemm_f32, &gemm_f64,
};

}  // namespace fastconv::simd::avx2
