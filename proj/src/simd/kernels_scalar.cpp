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

#include "fastconv/simd.hpp"

namespace fastconv::simd::scalar {
namespace {

template <typename Y, typename X, typename A>
void axpy(Y* y, const X* x, A a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += a * static_cast<A>(x[j]);
}

template <typename T>
void gemm(T* m, const T* u, const T* v, std::size_t rows, std::size_t inner,
          std::size_t cols, std::size_t ldu, std::size_t ldv,
          std::size_t ldm) {
  for (std::size_t k = 0; k < rows; ++k) {
    T* out = m + k * ldm;
    for (std::size_t c = 0; c < inner; ++c) {
      const T a = u[k * ldu + c];
      const T* in = v + c * ldv;
      for (std::size_t j = 0; j < cols; ++j) out[j] += a * in[j];
    }
  }
}

}  // namespace

const KernelTable kTable = {
    Isa::scalar,
    &axpy<float, float, float>,
    &axpy<double, double, double>,
    &axpy<double, float, double>,
    &gemm<float>,
    &gemm<double>,
};

}  // namespace fastconv::simd::scalar
