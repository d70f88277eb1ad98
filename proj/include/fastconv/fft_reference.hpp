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

#ifndef FASTCONV_FFT_REFERENCE_HPP_
#define FASTCONV_FFT_REFERENCE_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fastconv/matrix.hpp"
#include "fastconv/op_counter.hpp"
#include "fastconv/reference_conv.hpp"
#include "fastconv/tensor.hpp"

namespace fastconv {

// (x0 + i x1)(y0 + i y1) with three real multiplies:
//   ua = x0, ub = x0 + x1, uc = x1 - x0;  va = y0, vb = y1, vc = y0 + y1
//   t = ua vc;  real = t - ub vb;  imag = uc va + t.
// Returns {real, imag}. S may be any type with +, -, *.
template <typename S>
std::pair<S, S> complex_mul_3(const S& x0, const S& x1, const S& y0,
                              const S& y1) {
  const S ua = x0, ub = x0 + x1, uc = x1 - x0;
  const S va = y0, vb = y1, vc = y0 + y1;
  const S t = ua * vc;
  return {t - ub * vb, uc * va + t};
}

template <typename S>
std::pair<S, S> complex_mul_4(const S& x0, const S& x1, const S& y0,
                              const S& y1) {
  return {x0 * y0 - x1 * y1, x0 * y1 + x1 * y0};
}

template <typename T>
std::complex<T> complex_mul_3(std::complex<T> x, std::complex<T> y) {
  const auto [re, im] = complex_mul_3(x.real(), x.imag(), y.real(), y.imag());
  return {re, im};
}

// Real-valued factors of a complex matrix for the 3-multiply product.
// Filter side: a = x0, b = x0 + x1, c = x1 - x0.
// Data side:   a = y0, b = y1,      c = y0 + y1.
template <typename T>
struct SplitComplexFactors {
  Matrix<T> a;
  Matrix<T> b;
  Matrix<T> c;
};

template <typename T>
SplitComplexFactors<T> split_filter_factors(const Matrix<T>& re,
                                            const Matrix<T>& im);
template <typename T>
SplitComplexFactors<T> split_data_factors(const Matrix<T>& re,
                                          const Matrix<T>& im);

// Complex product M = U V from three real matmuls:
//   T = Ua Vc,  M0 = Uc Va + T,  M1 = -Ub Vb + T.
// M0 holds the imaginary part and M1 the real part of M.
template <typename T>
struct FastCgemmResult {
  Matrix<T> m0;  // imaginary
  Matrix<T> m1;  // real
};

template <typename T>
FastCgemmResult<T> fast_cgemm(const SplitComplexFactors<T>& u,
                              const SplitComplexFactors<T>& v,
                              OpCounter* counter = nullptr);

// In-place power-of-two FFT (iterative radix-2 decimation in time).
template <typename T>
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);
  std::size_t size() const { return n_; }
  void forward(std::complex<T>* data) const { run(data, false); }
  // Unscaled inverse.
  void inverse(std::complex<T>* data) const { run(data, true); }

 private:
  void run(std::complex<T>* data, bool inverse) const;
  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<T>> twiddle_;
};

// Row-column 2D DFT on alpha x alpha planes. For real input only the
// alpha x (alpha/2 + 1) Hermitian-unique columns are returned; the rest
// follow from F[u][v] = conj(F[(alpha-u)%alpha][(alpha-v)%alpha]).
template <typename T>
class Fft2d {
 public:
  explicit Fft2d(std::size_t alpha);
  std::size_t alpha() const { return alpha_; }
  std::size_t unique_cols() const { return alpha_ / 2 + 1; }

  // in: alpha x alpha real, out: alpha x unique_cols complex.
  void forward_real(const T* in, std::complex<T>* out) const;
  // unique (alpha x unique_cols) -> full alpha x alpha by conjugate symmetry.
  void expand(const std::complex<T>* unique, std::complex<T>* full) const;
  // full alpha x alpha spectrum -> real part of the inverse DFT (scaled).
  void inverse_real(const std::complex<T>* full, T* out) const;

 private:
  std::size_t alpha_;
  Fft1d<T> fft_;
};

// alpha * (floor(alpha/2) + 1)
constexpr std::size_t hermitian_unique_count(std::size_t alpha) {
  return alpha * (alpha / 2 + 1);
}

// Real multiplies per input of the multiply stage with Hermitian symmetry:
// 4 (floor(alpha/2)+1)/alpha with ordinary complex products, 3 (...)/alpha
// with the 3-multiply product.
double fft_real_multiplies_per_input(std::size_t alpha, bool fast_cgemm);

struct FftOptions {
  bool fast_cgemm = false;
  // Multiply only the Hermitian-unique components and reflect. When false
  // every alpha x alpha component is multiplied.
  bool hermitian = true;
};

// Overlap-and-save layer: per alpha x alpha input window the cyclic
// convolution with the zero-padded reversed filter is formed in the
// frequency domain, reduced over channels with complex matmuls (as in the
// Winograd layer), inverted, and only the (alpha-R+1) x (alpha-S+1) valid
// outputs kept. Windows overlap by R-1 / S-1. alpha must be a power of two
// with alpha >= R, S. Counts one complex multiply per component, filter,
// channel and tile, and 4 or 3 real multiplies for each.
template <typename T>
Tensor4<T> fft_forward_layer(const Tensor4<T>& d, const Tensor4<T>& g,
                             const LayerConfig& cfg, std::size_t alpha,
                             FftOptions options = {},
                             OpCounter* counter = nullptr);

}  // namespace fastconv

#endif  // FASTCONV_FFT_REFERENCE_HPP_
