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

#include "fastconv/layer_engine.hpp"

#include <algorithm>
#include <string>

#include "fastconv/parallel.hpp"
#include "fastconv/simd.hpp"

namespace fastconv {
namespace {

constexpr std::size_t kForwardTileChunk = 64;
constexpr std::size_t kWeightTileChunk = 256;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// out (p x p) = L (p x q) * X (q x q) * L^T, all row-major.
template <typename T>
void sandwich(const Matrix<T>& left, const T* x, T* tmp, T* out) {
  const std::size_t p = left.rows(), q = left.cols();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      T s = 0;
      for (std::size_t k = 0; k < q; ++k) s += left(i, k) * x[k * q + j];
      tmp[i * q + j] = s;
    }
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      T s = 0;
      for (std::size_t k = 0; k < q; ++k) s += tmp[i * q + k] * left(j, k);
      out[i * p + j] = s;
    }
}

// alpha x alpha window of plane (height x width) starting at (row, col);
// reads outside the plane are zero.
template <typename T>
void load_window(std::span<const T> plane, std::size_t height,
                 std::size_t width, std::ptrdiff_t row, std::ptrdiff_t col,
                 std::size_t alpha, T* out) {
  for (std::size_t a = 0; a < alpha; ++a) {
    const std::ptrdiff_t y = row + static_cast<std::ptrdiff_t>(a);
    const bool row_ok = y >= 0 && y < static_cast<std::ptrdiff_t>(height);
    for (std::size_t b = 0; b < alpha; ++b) {
      const std::ptrdiff_t x = col + static_cast<std::ptrdiff_t>(b);
      out[a * alpha + b] =
          row_ok && x >= 0 && x < static_cast<std::ptrdiff_t>(width)
              ? plane[static_cast<std::size_t>(y) * width +
                      static_cast<std::size_t>(x)]
              : T(0);
    }
  }
}

}  // namespace

TileGrid::Origin TileGrid::origin(std::size_t b, std::size_t pad) const {
  const std::size_t per_image = tiles_h * tiles_w;
  const std::size_t image = b / per_image;
  const std::size_t rest = b % per_image;
  return {image,
          static_cast<std::ptrdiff_t>((rest / tiles_w) * m) -
              static_cast<std::ptrdiff_t>(pad),
          static_cast<std::ptrdiff_t>((rest % tiles_w) * m) -
              static_cast<std::ptrdiff_t>(pad)};
}

TileGrid make_tile_grid(const LayerConfig& cfg, std::size_t m, std::size_t r) {
  require(m >= 1, "make_tile_grid: m must be >= 1");
  return {m, r, m + r - 1, cfg.N, ceil_div(cfg.out_h(), m),
          ceil_div(cfg.out_w(), m)};
}

std::size_t tile_count(const LayerConfig& cfg, std::size_t m) {
  return make_tile_grid(cfg, m, cfg.R).count();
}

std::uint64_t multiply_stage_flops(const LayerConfig& cfg, std::size_t m) {
  return static_cast<std::uint64_t>(tile_count(cfg, m)) * cfg.C * cfg.K *
         (m + cfg.R - 1) * (m + cfg.S - 1);
}

template <typename T>
TransformedFilters<T>::TransformedFilters(const Tensor4<T>& g,
                                          const WinogradAlgorithm& alg)
    : alg_(alg), k_(g.shape().n0), c_(g.shape().n1) {
  require(g.shape().n2 == alg.r() && g.shape().n3 == alg.r(),
          "TransformedFilters: filter is " + std::to_string(g.shape().n2) +
              "x" + std::to_string(g.shape().n3) + ", " + alg.name() +
              " expects " + std::to_string(alg.r()) + "x" +
              std::to_string(alg.r()));
  const std::size_t alpha = alg.alpha(), r = alg.r();
  const std::size_t comps = alpha * alpha;
  const Matrix<T> gm = alg.filter_transform().cast<T>();
  data_.assign(comps * k_ * c_, T(0));
  parallel_for(k_, [&](std::size_t begin, std::size_t end) {
    std::vector<T> tmp(alpha * r), u(comps);
    for (std::size_t k = begin; k < end; ++k)
      for (std::size_t c = 0; c < c_; ++c) {
        const T* src = g.data().data() + g.offset(k, c, 0, 0);
        sandwich(gm, src, tmp.data(), u.data());
        for (std::size_t e = 0; e < comps; ++e)
          data_[(e * k_ + k) * c_ + c] = u[e];
      }
  });
}

template <typename T>
Tensor4<T> winograd_forward(const Tensor4<T>& d,
                            const TransformedFilters<T>& filters,
                            const LayerConfig& cfg, OpCounter* counter) {
  cfg.validate();
  const WinogradAlgorithm& alg = filters.algorithm();
  require(cfg.R == alg.r() && cfg.S == alg.r(),
          "winograd_forward: " + alg.name() + " needs " +
              std::to_string(alg.r()) + "x" + std::to_string(alg.r()) +
              " filters");
  require(filters.filters() == cfg.K && filters.channels() == cfg.C,
          "winograd_forward: transformed filters do not match config");
  require(d.shape() == cfg.input_shape(),
          "winograd_forward: input shape " + to_string(d.shape()) +
              " does not match config");

  const Matrix<T> bt = alg.data_transform().cast<T>();
  const Matrix<T> at = alg.inverse_transform().cast<T>();
  const TileGrid grid = make_tile_grid(cfg, alg.m(), alg.r());
  const std::size_t alpha = grid.alpha, m = grid.m;
  const std::size_t comps = alpha * alpha;
  const std::size_t tiles = grid.count();
  const std::size_t C = cfg.C, K = cfg.K;
  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  const std::size_t chunks = ceil_div(tiles, kForwardTileChunk);

  Tensor4<T> y(cfg.output_shape());
  parallel_for(chunks, [&](std::size_t first, std::size_t last) {
    std::vector<T> v(comps * C * kForwardTileChunk);
    std::vector<T> mm(comps * K * kForwardTileChunk);
    std::vector<T> window(comps), tmp(comps), tile(comps), out(m * m);
    for (std::size_t chunk = first; chunk < last; ++chunk) {
      const std::size_t b0 = chunk * kForwardTileChunk;
      const std::size_t pb = std::min(kForwardTileChunk, tiles - b0);

      // Data transform, scattered to V^(e): C x pb.
      for (std::size_t bb = 0; bb < pb; ++bb) {
        const auto o = grid.origin(b0 + bb, cfg.pad);
        for (std::size_t c = 0; c < C; ++c) {
          load_window(d.plane(o.image, c), cfg.H, cfg.W, o.row, o.col, alpha,
                      window.data());
          sandwich(bt, window.data(), tmp.data(), tile.data());
          for (std::size_t e = 0; e < comps; ++e)
            v[(e * C + c) * pb + bb] = tile[e];
        }
      }

      // M^(e) = U^(e) V^(e): K x pb.
      std::fill(mm.begin(), mm.begin() + comps * K * pb, T(0));
      for (std::size_t e = 0; e < comps; ++e)
        simd::gemm_accumulate(mm.data() + e * K * pb, filters.component(e),
                              v.data() + e * C * pb, K, C, pb, C, pb, pb);
      count_real(counter, static_cast<std::uint64_t>(comps) * K * C * pb);

      // Gather, inverse transform, clip to the output plane.
      for (std::size_t k = 0; k < K; ++k)
        for (std::size_t bb = 0; bb < pb; ++bb) {
          for (std::size_t e = 0; e < comps; ++e)
            tile[e] = mm[(e * K + k) * pb + bb];
          sandwich(at, tile.data(), tmp.data(), out.data());
          const auto o = grid.origin(b0 + bb, cfg.pad);
          const std::size_t y0 = static_cast<std::size_t>(
              o.row + static_cast<std::ptrdiff_t>(cfg.pad));
          const std::size_t x0 = static_cast<std::size_t>(
              o.col + static_cast<std::ptrdiff_t>(cfg.pad));
          auto plane = y.plane(o.image, k);
          for (std::size_t a = 0; a < m && y0 + a < oh; ++a)
            for (std::size_t b = 0; b < m && x0 + b < ow; ++b)
              plane[(y0 + a) * ow + x0 + b] = out[a * m + b];
        }
    }
  });
  return y;
}

template <typename T>
Tensor4<T> winograd_forward(const Tensor4<T>& d, const Tensor4<T>& g,
                            const LayerConfig& cfg,
                            const WinogradAlgorithm& alg, OpCounter* counter) {
  require(g.shape() == cfg.filter_shape(),
          "winograd_forward: filter shape " + to_string(g.shape()) +
              " does not match config");
  return winograd_forward(d, TransformedFilters<T>(g, alg), cfg, counter);
}

template <typename T>
Tensor4<T> winograd_grad_inputs(const Tensor4<T>& dy, const Tensor4<T>& g,
                                const LayerConfig& cfg,
                                const WinogradAlgorithm& alg,
                                OpCounter* counter) {
  cfg.validate();
  require(dy.shape() == cfg.output_shape(),
          "winograd_grad_inputs: dY shape does not match config");
  require(g.shape() == cfg.filter_shape(),
          "winograd_grad_inputs: filter shape does not match config");
  require(cfg.R == cfg.S, "winograd_grad_inputs: square filters only");
  require(cfg.pad <= cfg.R - 1, "winograd_grad_inputs: pad must be <= R-1");

  Tensor4<T> flipped({cfg.C, cfg.K, cfg.R, cfg.S});
  for (std::size_t k = 0; k < cfg.K; ++k)
    for (std::size_t c = 0; c < cfg.C; ++c)
      for (std::size_t u = 0; u < cfg.R; ++u)
        for (std::size_t v = 0; v < cfg.S; ++v)
          flipped(c, k, u, v) = g(k, c, cfg.R - 1 - u, cfg.S - 1 - v);

  LayerConfig back = cfg;
  back.C = cfg.K;
  back.K = cfg.C;
  back.H = cfg.out_h();
  back.W = cfg.out_w();
  back.pad = cfg.R - 1 - cfg.pad;
  return winograd_forward(dy, flipped, back, alg, counter);
}

template <typename T>
Tensor4<T> winograd_grad_weights(const Tensor4<T>& d, const Tensor4<T>& dy,
                                 const LayerConfig& cfg,
                                 const WinogradAlgorithm& alg,
                                 OpCounter* counter) {
  cfg.validate();
  require(d.shape() == cfg.input_shape(),
          "winograd_grad_weights: input shape does not match config");
  require(dy.shape() == cfg.output_shape(),
          "winograd_grad_weights: dY shape does not match config");
  require(alg.m() == cfg.R && cfg.R == cfg.S,
          "winograd_grad_weights: " + alg.name() + " produces " +
              std::to_string(alg.m()) + "x" + std::to_string(alg.m()) +
              " outputs, filter is " + std::to_string(cfg.R) + "x" +
              std::to_string(cfg.S));

  const std::size_t block = alg.r();  // dY taps per block side
  const std::size_t alpha = alg.alpha();
  const std::size_t comps = alpha * alpha;
  const std::size_t C = cfg.C, K = cfg.K, R = cfg.R;
  const std::size_t oh = cfg.out_h(), ow = cfg.out_w();
  const std::size_t blocks_h = ceil_div(oh, block);
  const std::size_t blocks_w = ceil_div(ow, block);
  const std::size_t per_image = blocks_h * blocks_w;
  const std::size_t tiles = cfg.N * per_image;

  const Matrix<T> bt = alg.data_transform().cast<T>();
  const Matrix<T> gm = alg.filter_transform().cast<T>();
  const Matrix<T> at = alg.inverse_transform().cast<T>();

  std::vector<T> mm(comps * K * C, T(0));
  std::vector<T> u(comps * K * kWeightTileChunk);
  std::vector<T> v(comps * kWeightTileChunk * C);

  for (std::size_t b0 = 0; b0 < tiles; b0 += kWeightTileChunk) {
    const std::size_t pb = std::min(kWeightTileChunk, tiles - b0);
    parallel_for(pb, [&](std::size_t first, std::size_t last) {
      std::vector<T> window(comps), tmp(comps), tile(comps);
      for (std::size_t bb = first; bb < last; ++bb) {
        const std::size_t b = b0 + bb;
        const std::size_t image = b / per_image;
        const std::size_t by = (b % per_image) / blocks_w;
        const std::size_t bx = (b % per_image) % blocks_w;
        const auto row = static_cast<std::ptrdiff_t>(by * block);
        const auto col = static_cast<std::ptrdiff_t>(bx * block);
        const auto pad = static_cast<std::ptrdiff_t>(cfg.pad);
        // dY block as the "filter": G blk G^T -> U^(e): K x pb.
        for (std::size_t k = 0; k < K; ++k) {
          load_window(dy.plane(image, k), oh, ow, row, col, block,
                      window.data());
          sandwich(gm, window.data(), tmp.data(), tile.data());
          for (std::size_t e = 0; e < comps; ++e)
            u[(e * K + k) * pb + bb] = tile[e];
        }
        // Input window as the "data": BT win B -> V^(e): pb x C.
        for (std::size_t c = 0; c < C; ++c) {
          load_window(d.plane(image, c), cfg.H, cfg.W, row - pad, col - pad,
                      alpha, window.data());
          sandwich(bt, window.data(), tmp.data(), tile.data());
          for (std::size_t e = 0; e < comps; ++e)
            v[(e * pb + bb) * C + c] = tile[e];
        }
      }
    });
    // Chunks run in order, so each M element sums blocks in ascending b.
    parallel_for(comps, [&](std::size_t first, std::size_t last) {
      for (std::size_t e = first; e < last; ++e)
        simd::gemm_accumulate(mm.data() + e * K * C, u.data() + e * K * pb,
                              v.data() + e * pb * C, K, pb, C, pb, C, C);
    });
    count_real(counter, static_cast<std::uint64_t>(comps) * K * C * pb);
  }

  Tensor4<T> dg(cfg.filter_shape());
  std::vector<T> tile(comps), tmp(comps), out(R * R);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t e = 0; e < comps; ++e)
        tile[e] = mm[(e * K + k) * C + c];
      sandwich(at, tile.data(), tmp.data(), out.data());
      for (std::size_t a = 0; a < R; ++a)
        for (std::size_t b = 0; b < R; ++b) dg(k, c, a, b) = out[a * R + b];
    }
  return dg;
}

template class TransformedFilters<float>;
template class TransformedFilters<double>;

#define FASTCONV_INSTANTIATE(T)                                               \
  template Tensor4<T> winograd_forward(const Tensor4<T>&,                     \
                                       const TransformedFilters<T>&,          \
                                       const LayerConfig&, OpCounter*);       \
  template Tensor4<T> winograd_forward(const Tensor4<T>&, const Tensor4<T>&,  \
                                       const LayerConfig&,                    \
                                       const WinogradAlgorithm&, OpCounter*); \
  template Tensor4<T> winograd_grad_inputs(                                   \
      const Tensor4<T>&, const Tensor4<T>&, const LayerConfig&,               \
      const WinogradAlgorithm&, OpCounter*);                                  \
  template Tensor4<T> winograd_grad_weights(                                  \
      const Tensor4<T>&, const Tensor4<T>&, const LayerConfig&,               \
      const WinogradAlgorithm&, OpCounter*);

FASTCONV_INSTANTIATE(float)
FASTCONV_INSTANTIATE(double)

#undef FASTCONV_INSTANTIATE

}  // namespace fastconv
