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

#ifndef FASTCONV_COMPLEXITY_HPP_
#define FASTCONV_COMPLEXITY_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fastconv/reference_conv.hpp"
#include "fastconv/winograd.hpp"

namespace fastconv {

enum class Method { direct, winograd, fft_direct_cgemm, fft_fast_cgemm };

std::string to_string(Method method);

// Normalized cost of one algorithm: alpha' multiplies per output, and the
// per-tile transform flops divided by alpha^2 (beta', gamma', delta').
struct ComplexityProfile {
  Method method = Method::direct;
  std::size_t alpha = 0;  // tile size
  std::size_t m = 1;      // outputs per tile dimension
  double beta = 0;        // data transform flops per tile
  double gamma = 0;       // filter transform flops per tile
  double delta = 0;       // inverse transform flops per tile
  double alpha_n = 0;
  double beta_n = 0;
  double gamma_n = 0;
  double delta_n = 0;
  // Counts quoted from the literature rather than derived here.
  bool reported = false;
};

// F(m x m, r x r) using the transform counts carried by the builtin
// algorithm; tiles 5 and 8 (F(3,3), F(6,3)) return the published rows with
// `reported` set. Other pairs throw NotProfiledError.
ComplexityProfile winograd_profile(std::size_t m, std::size_t r);
ComplexityProfile winograd_profile(std::size_t m, std::size_t r,
                                   const TransformFlops& flops);

// alpha' = R^2, no transforms.
ComplexityProfile direct_profile(std::size_t r);

// c * alpha * (floor(alpha/2) + 1) / m^2 with m = alpha - r + 1 and c = 3
// (fast CGEMM) or 4.
double fft_multiply_complexity(std::size_t alpha, std::size_t r, bool fast);

struct NormalizedTransforms {
  double beta_n;
  double gamma_n;
  double delta_n;
};

// Split-radix FFT transform costs for alpha in {8, 16, ..., 256}.
NormalizedTransforms fft_table_constants(std::size_t alpha, bool fast);

ComplexityProfile fft_profile(std::size_t alpha, std::size_t r, bool fast);

// P = N * outH * outW / m^2
double tiles_per_layer(const LayerConfig& cfg, std::size_t m);

// L = alpha' (1 + beta'/K + gamma'/P + delta'/C) N outH outW C K, in
// multiplies. For the direct profile this is the direct multiply count.
double layer_total_complexity(const LayerConfig& cfg,
                              const ComplexityProfile& prof);

// Transform costs relative to the multiply stage.
struct RelativeOverheads {
  double data;     // beta' / K
  double filter;   // gamma' / P
  double inverse;  // delta' / C
};
RelativeOverheads relative_overheads(const LayerConfig& cfg,
                                     const ComplexityProfile& prof);

// r^2 m^2 / (m + r - 1)^2
double max_speedup(std::size_t m, std::size_t r);

// Rows of the normalized complexity tables.
std::vector<ComplexityProfile> winograd_table();
std::vector<ComplexityProfile> fft_table(bool fast);

}  // namespace fastconv

#endif  // FASTCONV_COMPLEXITY_HPP_
