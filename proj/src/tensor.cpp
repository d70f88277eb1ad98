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

#include "fastconv/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fastconv {

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::fp32:
      return "fp32";
    case Precision::fp16_sim:
      return "fp16";
    case Precision::fp64:
      return "fp64";
  }
  return "?";
}

Precision parse_precision(std::string_view name) {
  if (name == "fp32") return Precision::fp32;
  if (name == "fp16" || name == "fp16-sim") return Precision::fp16_sim;
  if (name == "fp64") return Precision::fp64;
  throw std::invalid_argument("unknown precision '" + std::string(name) + "'");
}

std::string to_string(const Shape4& s) {
  return "(" + std::to_string(s.n0) + "," + std::to_string(s.n1) + "," +
         std::to_string(s.n2) + "," + std::to_string(s.n3) + ")";
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

template <typename T>
void fill_uniform(Tensor4<T>& t, std::uint64_t seed, double lo, double hi) {
  if (!(lo < hi))
    throw std::invalid_argument("fill_uniform: requires lo < hi");
  const double width = hi - lo;
  const T top = static_cast<T>(hi);
  auto out = t.data();
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::uint64_t bits = splitmix64(seed + (j + 1) * kGolden);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    T v = static_cast<T>(lo + width * u);
    // Rounding to T may land on hi; keep the interval half-open.
    if (v >= top) v = std::nextafter(top, static_cast<T>(lo));
    if (v < static_cast<T>(lo)) v = static_cast<T>(lo);
    out[j] = v;
  }
}

float round_to_fp16(double x) {
  constexpr double kMax = 65504.0;
  if (std::isnan(x)) return std::numeric_limits<float>::quiet_NaN();
  const double mag = std::fabs(x);
  if (mag > kMax)
    throw std::overflow_error("quantize_fp16: |" + std::to_string(x) +
                              "| exceeds binary16 max 65504");
  if (mag == 0.0) return static_cast<float>(x);
  int e = 0;
  std::frexp(mag, &e);  // mag = f * 2^e, f in [0.5, 1)
  // 11 significant bits; below 2^-14 the spacing is fixed at 2^-24.
  const int quantum_exp = std::max(e - 11, -24);
  const double q = std::ldexp(1.0, quantum_exp);
  const double rounded = std::nearbyint(x / q) * q;
  return static_cast<float>(rounded);
}

template <typename T>
Tensor4f quantize_fp16(const Tensor4<T>& t) {
  std::vector<float> out(t.size());
  auto in = t.data();
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = round_to_fp16(static_cast<double>(in[j]));
  return Tensor4f(t.shape(), std::move(out));
}

template <typename A, typename B>
double max_abs_error(const Tensor4<A>& a, const Tensor4<B>& b) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("max_abs_error: shape " + to_string(a.shape()) +
                                " vs " + to_string(b.shape()));
  double worst = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t j = 0; j < x.size(); ++j)
    worst = std::max(worst, std::fabs(static_cast<double>(x[j]) -
                                      static_cast<double>(y[j])));
  return worst;
}

template void fill_uniform(Tensor4<float>&, std::uint64_t, double, double);
template void fill_uniform(Tensor4<double>&, std::uint64_t, double, double);
template Tensor4f quantize_fp16(const Tensor4<float>&);
template Tensor4f quantize_fp16(const Tensor4<double>&);
template double max_abs_error(const Tensor4<float>&, const Tensor4<float>&);
template double max_abs_error(const Tensor4<float>&, const Tensor4<double>&);
template double max_abs_error(const Tensor4<double>&, const Tensor4<float>&);
template double max_abs_error(const Tensor4<double>&, const Tensor4<double>&);

}  // namespace fastconv
