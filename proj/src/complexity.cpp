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

#include "fastconv/complexity.hpp"

#include <array>
#include <stdexcept>

namespace fastconv {
namespace {

struct FftRow {
  std::size_t alpha;
  NormalizedTransforms direct;
  NormalizedTransforms fast;
};

// Split-radix costs; the direct-CGEMM variant uses one figure for all three
// transforms.
constexpr std::array<FftRow, 6> kFftRows{{
    {8, {2.42, 2.42, 2.42}, {3.77, 4.30, 4.30}},
    {16, {4.23, 4.23, 4.23}, {6.23, 6.82, 6.82}},
    {32, {6.24, 6.24, 6.24}, {8.94, 9.57, 9.57}},
    {64, {8.30, 8.30, 8.30}, {11.72, 12.36, 12.36}},
    {128, {10.37, 10.37, 10.37}, {14.48, 15.14, 15.14}},
    {256, {12.42, 12.42, 12.42}, {17.22, 17.88, 17.88}},
}};

ComplexityProfile reported_row(std::size_t m, std::size_t r, double alpha_n,
                               double beta_n, double gamma_n, double delta_n) {
  ComplexityProfile p;
  p.method = Method::winograd;
  p.m = m;
  p.alpha = m + r - 1;
  const double a2 = static_cast<double>(p.alpha * p.alpha);
  p.alpha_n = alpha_n;
  p.beta_n = beta_n;
  p.gamma_n = gamma_n;
  p.delta_n = delta_n;
  p.beta = beta_n * a2;
  p.gamma = gamma_n * a2;
  p.delta = delta_n * a2;
  p.reported = true;
  return p;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::direct: return "direct";
    case Method::winograd: return "winograd";
    case Method::fft_direct_cgemm: return "fft-direct-cgemm";
    case Method::fft_fast_cgemm: return "fft-fast-cgemm";
  }
  return "?";
}

ComplexityProfile winograd_profile(std::size_t m, std::size_t r,
                                   const TransformFlops& flops) {
  if (m == 0 || r == 0)
    throw std::invalid_argument("winograd_profile: m and r must be >= 1");
  ComplexityProfile p;
  p.method = Method::winograd;
  p.m = m;
  p.alpha = m + r - 1;
  const double a2 = static_cast<double>(p.alpha * p.alpha);
  p.beta = static_cast<double>(flops.data);
  p.gamma = static_cast<double>(flops.filter);
  p.delta = static_cast<double>(flops.inverse);
  p.alpha_n = a2 / static_cast<double>(m * m);
  p.beta_n = p.beta / a2;
  p.gamma_n = p.gamma / a2;
  p.delta_n = p.delta / a2;
  return p;
}

ComplexityProfile winograd_profile(std::size_t m, std::size_t r) {
  if (r == 3 && m == 3) return reported_row(3, 3, 2.78, 3.60, 2.24, 2.24);
  if (r == 3 && m == 6) return reported_row(6, 3, 1.78, 6.50, 2.23, 4.38);
  if (m == 1) {
    ComplexityProfile p = direct_profile(r);
    return p;
  }
  // builtin_algorithm throws invalid_argument for unknown pairs.
  std::optional<TransformFlops> flops;
  try {
    flops = builtin_algorithm(m, r).flops();
  } catch (const std::invalid_argument&) {
  }
  if (!flops)
    throw NotProfiledError("winograd_profile: no transform counts for F(" +
                           std::to_string(m) + "," + std::to_string(r) + ")");
  return winograd_profile(m, r, *flops);
}

ComplexityProfile direct_profile(std::size_t r) {
  ComplexityProfile p;
  p.method = Method::direct;
  p.m = 1;
  p.alpha = r;
  p.alpha_n = static_cast<double>(r * r);
  return p;
}

double fft_multiply_complexity(std::size_t alpha, std::size_t r, bool fast) {
  if (r == 0 || alpha < r)
    throw std::invalid_argument("fft_multiply_complexity: tile " +
                                std::to_string(alpha) + " too small for r=" +
                                std::to_string(r));
  const double m = static_cast<double>(alpha - r + 1);
  return (fast ? 3.0 : 4.0) * static_cast<double>(alpha) *
         static_cast<double>(alpha / 2 + 1) / (m * m);
}

NormalizedTransforms fft_table_constants(std::size_t alpha, bool fast) {
  for (const FftRow& row : kFftRows)
    if (row.alpha == alpha) return fast ? row.fast : row.direct;
  throw std::invalid_argument("fft_table_constants: unsupported tile " +
                              std::to_string(alpha));
}

ComplexityProfile fft_profile(std::size_t alpha, std::size_t r, bool fast) {
  const NormalizedTransforms t = fft_table_constants(alpha, fast);
  ComplexityProfile p;
  p.method = fast ? Method::fft_fast_cgemm : Method::fft_direct_cgemm;
  p.alpha = alpha;
  p.m = alpha - r + 1;
  p.alpha_n = fft_multiply_complexity(alpha, r, fast);
  const double a2 = static_cast<double>(alpha * alpha);
  p.beta_n = t.beta_n;
  p.gamma_n = t.gamma_n;
  p.delta_n = t.delta_n;
  p.beta = t.beta_n * a2;
  p.gamma = t.gamma_n * a2;
  p.delta = t.delta_n * a2;
  p.reported = true;
  return p;
}

double tiles_per_layer(const LayerConfig& cfg, std::size_t m) {
  const double mm = static_cast<double>(m * m);
  return static_cast<double>(cfg.N) * static_cast<double>(cfg.out_h()) *
         static_cast<double>(cfg.out_w()) / mm;
}

RelativeOverheads relative_overheads(const LayerConfig& cfg,
                                     const ComplexityProfile& prof) {
  return {prof.beta_n / static_cast<double>(cfg.K),
          prof.gamma_n / tiles_per_layer(cfg, prof.m),
          prof.delta_n / static_cast<double>(cfg.C)};
}

double layer_total_complexity(const LayerConfig& cfg,
                              const ComplexityProfile& prof) {
  cfg.validate();
  const RelativeOverheads o = relative_overheads(cfg, prof);
  const double nhwck = static_cast<double>(cfg.N) *
                       static_cast<double>(cfg.out_h()) *
                       static_cast<double>(cfg.out_w()) *
                       static_cast<double>(cfg.C) * static_cast<double>(cfg.K);
  return prof.alpha_n * (1.0 + o.data + o.filter + o.inverse) * nhwck;
}

double max_speedup(std::size_t m, std::size_t r) {
  const double a = static_cast<double>(m + r - 1);
  return static_cast<double>(r * r) * static_cast<double>(m * m) / (a * a);
}

std::vector<ComplexityProfile> winograd_table() {
  return {direct_profile(3), winograd_profile(2, 3), winograd_profile(3, 3),
          winograd_profile(4, 3), winograd_profile(6, 3)};
}

std::vector<ComplexityProfile> fft_table(bool fast) {
  std::vector<ComplexityProfile> rows;
  for (const FftRow& row : kFftRows) rows.push_back(fft_profile(row.alpha, 3, fast));
  return rows;
}

}  // namespace fastconv
