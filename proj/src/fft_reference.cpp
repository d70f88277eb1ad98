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

#include "fastconv/fft_reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fastconv/parallel.hpp"
#include "fastconv/simd.hpp"

namespace fastconv {
namespace {

constexpr std::size_t kFftTileChunk = 32;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b,
                        const char* what) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), what);
}

}  // namespace

template <typename T>
SplitComplexFactors<T> split_filter_factors(const Matrix<T>& re,
                                            const Matrix<T>& im) {
  require_same_shape(re, im, "split_filter_factors: shape mismatch");
  SplitComplexFactors<T> f{re, re, im};
  for (std::size_t j = 0; j < re.values().size(); ++j) {
    f.b.values()[j] = re.values()[j] + im.values()[j];
    f.c.values()[j] = im.values()[j] - re.values()[j];
  }
  return f;
}

template <typename T>
SplitComplexFactors<T> split_data_factors(const Matrix<T>& re,
                                          const Matrix<T>& im) {
  require_same_shape(re, im, "split_data_factors: shape mismatch");
  SplitComplexFactors<T> f{re, im, re};
  for (std::size_t j = 0; j < re.values().size(); ++j)
    f.c.values()[j] = re.values()[j] + im.values()[j];
  return f;
}

template <typename T>
FastCgemmResult<T> fast_cgemm(const SplitComplexFactors<T>& u,
                              const SplitComplexFactors<T>& v,
                              OpCounter* counter) {
  require_same_shape(u.a, u.b, "fast_cgemm: U factor shapes differ");
  require_same_shape(u.a, u.c, "fast_cgemm: U factor shapes differ");
  require_same_shape(v.a, v.b, "fast_cgemm: V factor shapes differ");
  require_same_shape(v.a, v.c, "fast_cgemm: V factor shapes differ");
  require(u.a.cols() == v.a.rows(), "fast_cgemm: inner dimensions differ");
  const std::size_t rows = u.a.rows(), inner = u.a.cols(), cols = v.a.cols();

  Matrix<T> t(rows, cols);
  simd::gemm_accumulate(t.values().data(), u.a.values().data(),
                        v.c.values().data(), rows, inner, cols, inner, cols,
                        cols);
  FastCgemmResult<T> out{t, t};
  simd::gemm_accumulate(out.m0.values().data(), u.c.values().data(),
                        v.a.values().data(), rows, inner, cols, inner, cols,
                        cols);
  Matrix<T> neg_b = u.b;
  for (T& x : neg_b.values()) x = -x;
  simd::gemm_accumulate(out.m1.values().data(), neg_b.values().data(),
                        v.b.values().data(), rows, inner, cols, inner, cols,
                        cols);
  const std::uint64_t products =
      static_cast<std::uint64_t>(rows) * inner * cols;
  count_complex(counter, products);
  count_real(counter, 3 * products);
  return out;
}

template <typename T>
Fft1d<T>::Fft1d(std::size_t n) : n_(n), bitrev_(n), twiddle_(n / 2) {
  require(is_power_of_two(n), "Fft1d: size " + std::to_string(n) +
                                  " is not a power of two");
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bitrev_[i] = r;
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle_[k] = {static_cast<T>(std::cos(angle)),
                   static_cast<T>(std::sin(angle))};
  }
}

template <typename T>
void Fft1d<T>::run(std::complex<T>* data, bool inverse) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2, step = n_ / len;
    for (std::size_t start = 0; start < n_; start += len)
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<T> w = twiddle_[j * step];
        if (inverse) w = std::conj(w);
        const std::complex<T> a = data[start + j];
        const std::complex<T> b = data[start + j + half] * w;
        data[start + j] = a + b;
        data[start + j + half] = a - b;
      }
  }
}

template <typename T>
Fft2d<T>::Fft2d(std::size_t alpha) : alpha_(alpha), fft_(alpha) {}

template <typename T>
void Fft2d<T>::forward_real(const T* in, std::complex<T>* out) const {
  const std::size_t n = alpha_, w = unique_cols();
  std::vector<std::complex<T>> plane(n * n), column(n);
  for (std::size_t j = 0; j < n * n; ++j) plane[j] = in[j];
  for (std::size_t row = 0; row < n; ++row) fft_.forward(plane.data() + row * n);
  for (std::size_t col = 0; col < w; ++col) {
    for (std::size_t row = 0; row < n; ++row) column[row] = plane[row * n + col];
    fft_.forward(column.data());
    for (std::size_t row = 0; row < n; ++row) out[row * w + col] = column[row];
  }
}

template <typename T>
void Fft2d<T>::expand(const std::complex<T>* unique,
                      std::complex<T>* full) const {
  const std::size_t n = alpha_, w = unique_cols();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      full[u * n + v] = v < w ? unique[u * w + v]
                              : std::conj(unique[((n - u) % n) * w + (n - v)]);
}

template <typename T>
void Fft2d<T>::inverse_real(const std::complex<T>* full, T* out) const {
  const std::size_t n = alpha_;
  std::vector<std::complex<T>> plane(full, full + n * n), column(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) column[row] = plane[row * n + col];
    fft_.inverse(column.data());
    for (std::size_t row = 0; row < n; ++row) plane[row * n + col] = column[row];
  }
  const T scale = T(1) / static_cast<T>(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    fft_.inverse(plane.data() + row * n);
    for (std::size_t col = 0; col < n; ++col)
      out[row * n + col] = plane[row * n + col].real() * scale;
  }
}

double fft_real_multiplies_per_input(std::size_t alpha, bool fast_cgemm) {
  return (fast_cgemm ? 3.0 : 4.0) * static_cast<double>(alpha / 2 + 1) /
         static_cast<double>(alpha);
}

template <typename T>
Tensor4<T> fft_forward_layer(const Tensor4<T>& d, const Tensor4<T>& g,
                             const LayerConfig& cfg, std::size_t alpha,
                             FftOptions options, OpCounter* counter) {
  cfg.validate();
  require(d.shape() == cfg.input_shape(),
          "fft_forward_layer: input shape does not match config");
  require(g.shape() == cfg.filter_shape(),
          "fft_forward_layer: filter shape does not match config");
  require(is_power_of_two(alpha), "fft_forward_layer: tile " +
                                      std::to_string(alpha) +
                                      " is not a power of two");
  require(alpha >= cfg.R && alpha >= cfg.S,
          "fft_forward_layer: tile " + std::to_string(alpha) +
              " too small for " + std::to_string(cfg.R) + "x" +
              std::to_string(cfg.S) + " filter");
  if (options.fast_cgemm && !options.hermitian)
    throw std::invalid_argument(
        "fft_forward_layer: fast CGEMM requires the Hermitian-unique path");

  const Fft2d<T> fft(alpha);
  const std::size_t C = cfg.C, K = cfg.K;
  const std::size_t mh = alpha - cfg.R + 1, mw = alpha - cfg.S + 1;
  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  const std::size_t tiles_h = ceil_div(oh, mh), tiles_w = ceil_div(ow, mw);
  const std::size_t per_image = tiles_h * tiles_w;
  const std::size_t tiles = cfg.N * per_image;
  const std::size_t full = alpha * alpha;
  const std::size_t unique = hermitian_unique_count(alpha);
  const std::size_t comps = options.hermitian ? unique : full;

  // Transformed filters: per component, K x C real and imaginary parts (or
  // the three fast-CGEMM factors a, -b, c).
  std::vector<T> ure(comps * K * C), uim(comps * K * C);
  parallel_for(K, [&](std::size_t first, std::size_t last) {
    std::vector<T> padded(full);
    std::vector<std::complex<T>> spectrum(unique), spectrum_full(full);
    for (std::size_t k = first; k < last; ++k)
      for (std::size_t c = 0; c < C; ++c) {
        std::fill(padded.begin(), padded.end(), T(0));
        for (std::size_t u = 0; u < cfg.R; ++u)
          for (std::size_t v = 0; v < cfg.S; ++v)
            padded[u * alpha + v] = g(k, c, cfg.R - 1 - u, cfg.S - 1 - v);
        fft.forward_real(padded.data(), spectrum.data());
        const std::complex<T>* src = spectrum.data();
        if (!options.hermitian) {
          fft.expand(spectrum.data(), spectrum_full.data());
          src = spectrum_full.data();
        }
        for (std::size_t e = 0; e < comps; ++e) {
          const std::size_t at = (e * K + k) * C + c;
          if (options.fast_cgemm) {
            ure[at] = src[e].real();                         // a
            uim[at] = -(src[e].real() + src[e].imag());      // -b
          } else {
            ure[at] = src[e].real();
            uim[at] = src[e].imag();
          }
        }
      }
  });
  std::vector<T> ufast_c;
  if (options.fast_cgemm) {
    // Factor c = x1 - x0, taken from the spectrum so it is exact.
    ufast_c.resize(comps * K * C);
    parallel_for(K, [&](std::size_t first, std::size_t last) {
      std::vector<T> padded(full);
      std::vector<std::complex<T>> spectrum(unique);
      for (std::size_t k = first; k < last; ++k)
        for (std::size_t c = 0; c < C; ++c) {
          std::fill(padded.begin(), padded.end(), T(0));
          for (std::size_t u = 0; u < cfg.R; ++u)
            for (std::size_t v = 0; v < cfg.S; ++v)
              padded[u * alpha + v] = g(k, c, cfg.R - 1 - u, cfg.S - 1 - v);
          fft.forward_real(padded.data(), spectrum.data());
          for (std::size_t e = 0; e < comps; ++e)
            ufast_c[(e * K + k) * C + c] = spectrum[e].imag() - spectrum[e].real();
        }
    });
  }

  Tensor4<T> y(cfg.output_shape());
  const std::size_t chunks = ceil_div(tiles, kFftTileChunk);
  parallel_for(chunks, [&](std::size_t first, std::size_t last) {
    const std::size_t cap = kFftTileChunk;
    std::vector<T> vre(comps * C * cap), vim(comps * C * cap), vsum;
    std::vector<T> mre(comps * K * cap), mim(comps * K * cap), tmp;
    if (options.fast_cgemm) vsum.resize(comps * C * cap);
    std::vector<T> window(full), spatial(full);
    std::vector<std::complex<T>> spectrum(unique), spectrum_full(full);
    for (std::size_t chunk = first; chunk < last; ++chunk) {
      const std::size_t b0 = chunk * cap;
      const std::size_t pb = std::min(cap, tiles - b0);
      for (std::size_t bb = 0; bb < pb; ++bb) {
        const std::size_t b = b0 + bb;
        const std::size_t image = b / per_image;
        const auto row = static_cast<std::ptrdiff_t>(
                             ((b % per_image) / tiles_w) * mh) -
                         static_cast<std::ptrdiff_t>(cfg.pad);
        const auto col = static_cast<std::ptrdiff_t>(
                             ((b % per_image) % tiles_w) * mw) -
                         static_cast<std::ptrdiff_t>(cfg.pad);
        for (std::size_t c = 0; c < C; ++c) {
          auto plane = d.plane(image, c);
          for (std::size_t a = 0; a < alpha; ++a)
            for (std::size_t bcol = 0; bcol < alpha; ++bcol) {
              const std::ptrdiff_t iy = row + static_cast<std::ptrdiff_t>(a);
              const std::ptrdiff_t ix = col + static_cast<std::ptrdiff_t>(bcol);
              window[a * alpha + bcol] =
                  iy >= 0 && ix >= 0 && iy < static_cast<std::ptrdiff_t>(cfg.H) &&
                          ix < static_cast<std::ptrdiff_t>(cfg.W)
                      ? plane[static_cast<std::size_t>(iy) * cfg.W +
                              static_cast<std::size_t>(ix)]
                      : T(0);
            }
          fft.forward_real(window.data(), spectrum.data());
          const std::complex<T>* src = spectrum.data();
          if (!options.hermitian) {
            fft.expand(spectrum.data(), spectrum_full.data());
            src = spectrum_full.data();
          }
          for (std::size_t e = 0; e < comps; ++e) {
            const std::size_t at = (e * C + c) * pb + bb;
            vre[at] = src[e].real();
            vim[at] = src[e].imag();
            if (options.fast_cgemm) vsum[at] = src[e].real() + src[e].imag();
          }
        }
      }

      std::fill(mre.begin(), mre.begin() + comps * K * pb, T(0));
      std::fill(mim.begin(), mim.begin() + comps * K * pb, T(0));
      for (std::size_t e = 0; e < comps; ++e) {
        T* re = mre.data() + e * K * pb;
        T* im = mim.data() + e * K * pb;
        const T* va = vre.data() + e * C * pb;
        const T* vb = vim.data() + e * C * pb;
        const T* u0 = ure.data() + e * K * C;
        const T* u1 = uim.data() + e * K * C;
        if (options.fast_cgemm) {
          // T = Ua Vc, imag = Uc Va + T, real = -Ub Vb + T.
          const T* vc = vsum.data() + e * C * pb;
          simd::gemm_accumulate(re, u0, vc, K, C, pb, C, pb, pb);
          std::copy(re, re + K * pb, im);
          simd::gemm_accumulate(im, ufast_c.data() + e * K * C, va, K, C, pb,
                                C, pb, pb);
          simd::gemm_accumulate(re, u1, vb, K, C, pb, C, pb, pb);
        } else {
          // re = Ur Vr - Ui Vi, im = Ur Vi + Ui Vr.
          tmp.assign(K * C, T(0));
          for (std::size_t j = 0; j < K * C; ++j) tmp[j] = -u1[j];
          simd::gemm_accumulate(re, u0, va, K, C, pb, C, pb, pb);
          simd::gemm_accumulate(re, tmp.data(), vb, K, C, pb, C, pb, pb);
          simd::gemm_accumulate(im, u0, vb, K, C, pb, C, pb, pb);
          simd::gemm_accumulate(im, u1, va, K, C, pb, C, pb, pb);
        }
      }
      const std::uint64_t products =
          static_cast<std::uint64_t>(comps) * K * C * pb;
      count_complex(counter, products);
      count_real(counter, (options.fast_cgemm ? 3 : 4) * products);

      for (std::size_t k = 0; k < K; ++k)
        for (std::size_t bb = 0; bb < pb; ++bb) {
          if (options.hermitian) {
            for (std::size_t e = 0; e < unique; ++e)
              spectrum[e] = {mre[(e * K + k) * pb + bb], mim[(e * K + k) * pb + bb]};
            fft.expand(spectrum.data(), spectrum_full.data());
          } else {
            for (std::size_t e = 0; e < full; ++e)
              spectrum_full[e] = {mre[(e * K + k) * pb + bb],
                              mim[(e * K + k) * pb + bb]};
          }
          fft.inverse_real(spectrum_full.data(), spatial.data());
          const std::size_t b = b0 + bb;
          const std::size_t image = b / per_image;
          const std::size_t y0 = ((b % per_image) / tiles_w) * mh;
          const std::size_t x0 = ((b % per_image) % tiles_w) * mw;
          auto out = y.plane(image, k);
          for (std::size_t a = 0; a < mh && y0 + a < oh; ++a)
            for (std::size_t bcol = 0; bcol < mw && x0 + bcol < ow; ++bcol)
              out[(y0 + a) * ow + x0 + bcol] =
                  spatial[(cfg.R - 1 + a) * alpha + cfg.S - 1 + bcol];
        }
    }
  });
  return y;
}

template SplitComplexFactors<float> split_filter_factors(const Matrix<float>&,
                                                         const Matrix<float>&);
template SplitComplexFactors<double> split_filter_factors(
    const Matrix<double>&, const Matrix<double>&);
template SplitComplexFactors<float> split_data_factors(const Matrix<float>&,
                                                       const Matrix<float>&);
template SplitComplexFactors<double> split_data_factors(const Matrix<double>&,
                                                        const Matrix<double>&);
template FastCgemmResult<float> fast_cgemm(const SplitComplexFactors<float>&,
                                           const SplitComplexFactors<float>&,
                                           OpCounter*);
template FastCgemmResult<double> fast_cgemm(const SplitComplexFactors<double>&,
                                            const SplitComplexFactors<double>&,
                                            OpCounter*);
template class Fft1d<float>;
template class Fft1d<double>;
template class Fft2d<float>;
template class Fft2d<double>;
template Tensor4<float> fft_forward_layer(const Tensor4<float>&,
                                          const Tensor4<float>&,
                                          const LayerConfig&, std::size_t,
                                          FftOptions, OpCounter*);
template Tensor4<double> fft_forward_layer(const Tensor4<double>&,
                                           const Tensor4<double>&,
                                           const LayerConfig&, std::size_t,
                                           FftOptions, OpCounter*);

}  // namespace fastconv
