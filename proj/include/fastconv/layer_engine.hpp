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

#ifndef FASTCONV_LAYER_ENGINE_HPP_
#define FASTCONV_LAYER_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fastconv/op_counter.hpp"
#include "fastconv/reference_conv.hpp"
#include "fastconv/tensor.hpp"
#include "fastconv/winograd.hpp"

namespace fastconv {

// Partition of the output planes into m x m tiles. Tile b enumerates
// (image, tile row, tile col) in row-major order; its alpha x alpha input
// window starts at (m * tile_row - pad, m * tile_col - pad), so neighbouring
// windows overlap by r - 1.
struct TileGrid {
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t alpha = 0;
  std::size_t images = 0;
  std::size_t tiles_h = 0;
  std::size_t tiles_w = 0;

  std::size_t count() const { return images * tiles_h * tiles_w; }

  struct Origin {
    std::size_t image;
    std::ptrdiff_t row;
    std::ptrdiff_t col;
  };
  Origin origin(std::size_t b, std::size_t pad) const;
};

TileGrid make_tile_grid(const LayerConfig& cfg, std::size_t m, std::size_t r);

// N * ceil(outH / m) * ceil(outW / m)
std::size_t tile_count(const LayerConfig& cfg, std::size_t m);

// Multiplies of the element-wise stage:
// N ceil(outH/m) ceil(outW/m) C K (m+R-1)(m+S-1).
std::uint64_t multiply_stage_flops(const LayerConfig& cfg, std::size_t m);

// Filters in transform space: alpha^2 matrices U^(xi,nu) of shape K x C,
// U^(xi,nu)[k][c] = (G g_{k,c} G^T)[xi][nu].
template <typename T>
class TransformedFilters {
 public:
  TransformedFilters(const Tensor4<T>& g, const WinogradAlgorithm& alg);

  const WinogradAlgorithm& algorithm() const { return alg_; }
  std::size_t filters() const { return k_; }
  std::size_t channels() const { return c_; }
  std::size_t components() const { return alg_.alpha() * alg_.alpha(); }

  // Scalars held: alpha^2 * K * C.
  std::size_t workspace_size() const { return data_.size(); }

  // Row-major K x C matrix for component e = xi * alpha + nu.
  const T* component(std::size_t e) const { return data_.data() + e * k_ * c_; }

 private:
  WinogradAlgorithm alg_;
  std::size_t k_;
  std::size_t c_;
  std::vector<T> data_;
};

// Layer forward pass F(m x m, r x r): transform data tiles, reduce over
// channels with alpha^2 batched matmuls M = U V, inverse-transform each
// output tile once. Edge tiles are computed whole and clipped on write.
// Channel reduction runs in T, c ascending; results do not depend on the
// thread count or the active SIMD ISA.
template <typename T>
Tensor4<T> winograd_forward(const Tensor4<T>& d,
                            const TransformedFilters<T>& filters,
                            const LayerConfig& cfg,
                            OpCounter* counter = nullptr);

template <typename T>
Tensor4<T> winograd_forward(const Tensor4<T>& d, const Tensor4<T>& g,
                            const LayerConfig& cfg,
                            const WinogradAlgorithm& alg,
                            OpCounter* counter = nullptr);

// Input gradient: the forward algorithm run on dY padded by R-1-pad with
// filters flipped spatially and (k, c) swapped. Requires pad <= R-1.
template <typename T>
Tensor4<T> winograd_grad_inputs(const Tensor4<T>& dy, const Tensor4<T>& g,
                                const LayerConfig& cfg,
                                const WinogradAlgorithm& alg,
                                OpCounter* counter = nullptr);

// Weight gradient as a direct sum of F(R x R, r x r) problems: dY is cut
// into r x r blocks used as filters against alpha x alpha input windows
// overlapping by R - 1 (e.g. F(3x3, 2x2): 4x4 windows overlapping by 2),
// and the R x R outputs of all blocks are summed in transform space.
// Requires alg.m() == R == S.
template <typename T>
Tensor4<T> winograd_grad_weights(const Tensor4<T>& d, const Tensor4<T>& dy,
                                 const LayerConfig& cfg,
                                 const WinogradAlgorithm& alg,
                                 OpCounter* counter = nullptr);

}  // namespace fastconv

#endif  // FASTCONV_LAYER_ENGINE_HPP_
