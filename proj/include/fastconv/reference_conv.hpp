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

#ifndef FASTCONV_REFERENCE_CONV_HPP_
#define FASTCONV_REFERENCE_CONV_HPP_

#include <cstddef>
#include <cstdint>

#include "fastconv/op_counter.hpp"
#include "fastconv/tensor.hpp"

namespace fastconv {

// One convolution layer: N images of C x H x W correlated with K filters of
// C x R x S, zero padding `pad` on every border. `depth` is how many times
// the shape repeats in a network (only used for totals).
struct LayerConfig {
  std::size_t N = 1;
  std::size_t C = 1;
  std::size_t H = 1;
  std::size_t W = 1;
  std::size_t K = 1;
  std::size_t R = 1;
  std::size_t S = 1;
  std::size_t pad = 0;
  std::size_t depth = 1;

  std::size_t out_h() const { return H + 2 * pad - R + 1; }
  std::size_t out_w() const { return W + 2 * pad - S + 1; }

  Shape4 input_shape() const { return {N, C, H, W}; }
  Shape4 filter_shape() const { return {K, C, R, S}; }
  Shape4 output_shape() const { return {N, K, out_h(), out_w()}; }

  // Throws std::invalid_argument on zero counts or an empty output.
  void validate() const;

  friend bool operator==(const LayerConfig&, const LayerConfig&) = default;
};

// Y[i,k,y,x] = sum_c sum_u sum_v D[i,c,y+u-pad,x+v-pad] * G[k,c,u,v]
// (correlation; out-of-range reads are zero). Each output accumulates in Acc
// in the fixed order c, then u, then v, independent of ISA or thread count.
// Counts one multiply per (output, c, u, v) term.
template <typename Acc, typename T>
Tensor4<Acc> direct_forward(const Tensor4<T>& d, const Tensor4<T>& g,
                            const LayerConfig& cfg,
                            OpCounter* counter = nullptr);

// Gradient with respect to the layer input: the transpose of direct_forward
// as a linear map of d.
template <typename T>
Tensor4<T> direct_grad_inputs(const Tensor4<T>& dy, const Tensor4<T>& g,
                              const LayerConfig& cfg);

// dG[k,c,u,v] = sum_i sum_{y,x} D[i,c,y+u-pad,x+v-pad] * dY[i,k,y,x]
template <typename T>
Tensor4<T> direct_grad_weights(const Tensor4<T>& d, const Tensor4<T>& dy,
                               const LayerConfig& cfg);

// N * outH * outW * C * K * R * S
std::uint64_t direct_multiplies(const LayerConfig& cfg);

// 2 flops per multiply-accumulate, in units of 1e9, weighted by depth.
double gflops_direct(const LayerConfig& cfg);

}  // namespace fastconv

#endif  // FASTCONV_REFERENCE_CONV_HPP_
