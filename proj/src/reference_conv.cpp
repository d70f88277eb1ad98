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

#include "fastconv/reference_conv.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "fastconv/parallel.hpp"
#include "fastconv/simd.hpp"

namespace fastconv {

void LayerConfig::validate() const {
  if (N == 0 || C == 0 || H == 0 || W == 0 || K == 0 || R == 0 || S == 0 ||
      depth == 0)
    throw std::invalid_argument("LayerConfig: counts must be >= 1");
  if (R > H + 2 * pad || S > W + 2 * pad)
    throw std::invalid_argument("LayerConfig: filter larger than padded input");
}

namespace {

void check_shapes(const char* op, const Shape4& got, const Shape4& want) {
  if (!(got == want))
    throw std::invalid_argument(std::string(op) + ": shape " + to_string(got) +
                                " does not match config " + to_string(want));
}

// Output columns x whose input column x + v - pad lies in [0, width).
struct ColumnSpan {
  std::size_t begin;
  std::size_t end;
};

ColumnSpan valid_columns(std::size_t v, std::size_t pad, std::size_t width,
                         std::size_t out_w) {
  const std::size_t begin = pad > v ? pad - v : 0;
  const std::size_t limit = width + pad >= v ? width + pad - v : 0;
  return {begin, std::max(begin, std::min(out_w, limit))};
}

}  // namespace

template <typename Acc, typename T>
Tensor4<Acc> direct_forward(const Tensor4<T>& d, const Tensor4<T>& g,
                            const LayerConfig& cfg, OpCounter* counter) {
  static_assert(sizeof(Acc) >= sizeof(T), "accumulator narrower than data");
  cfg.validate();
  check_shapes("direct_forward", d.shape(), cfg.input_shape());
  check_shapes("direct_forward", g.shape(), cfg.filter_shape());

  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  Tensor4<Acc> y(cfg.output_shape());

  parallel_for(cfg.N * cfg.K, [&](std::size_t begin, std::size_t end) {
    for (std::size_t plane = begin; plane < end; ++plane) {
      const std::size_t i = plane / cfg.K, k = plane % cfg.K;
      auto out = y.plane(i, k);
      for (std::size_t oy = 0; oy < oh; ++oy) {
        std::span<Acc> acc = out.subspan(oy * ow, ow);
        for (std::size_t c = 0; c < cfg.C; ++c) {
          auto in = d.plane(i, c);
          for (std::size_t u = 0; u < cfg.R; ++u) {
            const std::size_t iy = oy + u;
            if (iy < cfg.pad || iy - cfg.pad >= cfg.H) continue;
            const std::size_t row = (iy - cfg.pad) * cfg.W;
            for (std::size_t v = 0; v < cfg.S; ++v) {
              const auto cols = valid_columns(v, cfg.pad, cfg.W, ow);
              if (cols.begin == cols.end) continue;
              const Acc w = static_cast<Acc>(g(k, c, u, v));
              simd::axpy(acc.subspan(cols.begin, cols.end - cols.begin),
                         in.subspan(row + cols.begin + v - cfg.pad,
                                    cols.end - cols.begin),
                         w);
            }
          }
        }
      }
    }
  });
  // Taps that fall on padding are multiplies by zero and still count.
  count_real(counter, direct_multiplies(cfg));
  return y;
}

template <typename T>
Tensor4<T> direct_grad_inputs(const Tensor4<T>& dy, const Tensor4<T>& g,
                              const LayerConfig& cfg) {
  cfg.validate();
  check_shapes("direct_grad_inputs", dy.shape(), cfg.output_shape());
  check_shapes("direct_grad_inputs", g.shape(), cfg.filter_shape());

  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  Tensor4<T> dd(cfg.input_shape());
  parallel_for(cfg.N * cfg.C, [&](std::size_t begin, std::size_t end) {
    for (std::size_t plane = begin; plane < end; ++plane) {
      const std::size_t i = plane / cfg.C, c = plane % cfg.C;
      auto out = dd.plane(i, c);
      for (std::size_t k = 0; k < cfg.K; ++k) {
        auto err = dy.plane(i, k);
        for (std::size_t u = 0; u < cfg.R; ++u)
          for (std::size_t v = 0; v < cfg.S; ++v) {
            const auto cols = valid_columns(v, cfg.pad, cfg.W, ow);
            if (cols.begin == cols.end) continue;
            const T w = g(k, c, u, v);
            for (std::size_t oy = 0; oy < oh; ++oy) {
              const std::size_t iy = oy + u;
              if (iy < cfg.pad || iy - cfg.pad >= cfg.H) continue;
              const std::size_t n = cols.end - cols.begin;
              simd::axpy(out.subspan((iy - cfg.pad) * cfg.W + cols.begin +
                                         v - cfg.pad,
                                     n),
                         err.subspan(oy * ow + cols.begin, n), w);
            }
          }
      }
    }
  });
  return dd;
}

template <typename T>
Tensor4<T> direct_grad_weights(const Tensor4<T>& d, const Tensor4<T>& dy,
                               const LayerConfig& cfg) {
  cfg.validate();
  check_shapes("direct_grad_weights", d.shape(), cfg.input_shape());
  check_shapes("direct_grad_weights", dy.shape(), cfg.output_shape());

  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  Tensor4<T> dg(cfg.filter_shape());
  parallel_for(cfg.K * cfg.C, [&](std::size_t begin, std::size_t end) {
    for (std::size_t pair = begin; pair < end; ++pair) {
      const std::size_t k = pair / cfg.C, c = pair % cfg.C;
      for (std::size_t u = 0; u < cfg.R; ++u)
        for (std::size_t v = 0; v < cfg.S; ++v) {
          const auto cols = valid_columns(v, cfg.pad, cfg.W, ow);
          T sum = 0;
          for (std::size_t i = 0; i < cfg.N; ++i) {
            auto in = d.plane(i, c);
            auto err = dy.plane(i, k);
            for (std::size_t oy = 0; oy < oh; ++oy) {
              const std::size_t iy = oy + u;
              if (iy < cfg.pad || iy - cfg.pad >= cfg.H) continue;
              const T* drow = in.data() + (iy - cfg.pad) * cfg.W;
              const T* erow = err.data() + oy * ow;
              for (std::size_t ox = cols.begin; ox < cols.end; ++ox)
                sum += drow[ox + v - cfg.pad] * erow[ox];
            }
          }
          dg(k, c, u, v) = sum;
        }
    }
  });
  return dg;
}

std::uint64_t direct_multiplies(const LayerConfig& cfg) {
  return static_cast<std::uint64_t>(cfg.N) * cfg.out_h() * cfg.out_w() *
         cfg.C * cfg.K * cfg.R * cfg.S;
}

double gflops_direct(const LayerConfig& cfg) {
  return 2.0 * static_cast<double>(direct_multiplies(cfg)) *
         static_cast<double>(cfg.depth) / 1e9;
}

template Tensor4<float> direct_forward<float, float>(const Tensor4<float>&,
                                                     const Tensor4<float>&,
                                                     const LayerConfig&,
                                                     OpCounter*);
template Tensor4<double> direct_forward<double, float>(const Tensor4<float>&,
                                                       const Tensor4<float>&,
                                                       const LayerConfig&,
                                                       OpCounter*);
template Tensor4<double> direct_forward<double, double>(const Tensor4<double>&,
                                                        const Tensor4<double>&,
                                                        const LayerConfig&,
                                                        OpCounter*);
template Tensor4<float> direct_grad_inputs(const Tensor4<float>&,
                                           const Tensor4<float>&,
                                           const LayerConfig&);
template Tensor4<double> direct_grad_inputs(const Tensor4<double>&,
                                            const Tensor4<double>&,
                                            const LayerConfig&);
template Tensor4<float> direct_grad_weights(const Tensor4<float>&,
                                            const Tensor4<float>&,
                                            const LayerConfig&);
template Tensor4<double> direct_grad_weights(const Tensor4<double>&,
                                             const Tensor4<double>&,
                                             const LayerConfig&);

}  // namespace fastconv
