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

#include <gtest/gtest.h>

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fastconv/fft_reference.hpp"
#include "fastconv/layer_engine.hpp"
#include "fastconv/parallel.hpp"

namespace fastconv {
namespace {

class ThreadCap {
 public:
  explicit ThreadCap(std::size_t n) { set_num_threads(n); }
  ~ThreadCap() { set_num_threads(0); }
};

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (std::size_t threads : {1u, 3u, 8u}) {
    ThreadCap cap(threads);
    for (std::size_t n : {0u, 1u, 5u, 97u}) {
      std::vector<std::atomic<int>> hits(n);
      parallel_for(n, [&](std::size_t b, std::size_t e) {
        ASSERT_LE(b, e);
        for (std::size_t j = b; j < e; ++j) hits[j]++;
      });
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(hits[j], 1) << j;
    }
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  ThreadCap cap(4);
  EXPECT_THROW(parallel_for(16,
                            [](std::size_t b, std::size_t) {
                              if (b == 0) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(ParallelFor, ThreadCapIsReported) {
  ThreadCap cap(3);
  EXPECT_EQ(num_threads(), 3u);
}

TEST(Determinism, ResultsIdenticalAcrossThreadCounts) {
  LayerConfig cfg{3, 9, 21, 17, 6, 3, 3, 1, 1};
  const auto d = uniform_tensor<float>(cfg.input_shape(), 4);
  const auto g = uniform_tensor<float>(cfg.filter_shape(), 5);
  const auto dy = uniform_tensor<float>(cfg.output_shape(), 6);
  const auto f2 = builtin_algorithm(2, 3), f4 = builtin_algorithm(4, 3),
             f32 = builtin_algorithm(3, 2);
  Tensor4f a, b, c, gi, gw, ff;
  {
    ThreadCap cap(1);
    a = direct_forward<float, float>(d, g, cfg);
    b = winograd_forward(d, g, cfg, f2);
    c = winograd_forward(d, g, cfg, f4);
    gi = winograd_grad_inputs(dy, g, cfg, f2);
    gw = winograd_grad_weights(d, dy, cfg, f32);
    ff = fft_forward_layer(d, g, cfg, 16);
  }
  for (std::size_t threads : {2u, 5u}) {
    ThreadCap cap(threads);
    EXPECT_EQ((direct_forward<float, float>(d, g, cfg)), a);
    EXPECT_EQ(winograd_forward(d, g, cfg, f2), b);
    EXPECT_EQ(winograd_forward(d, g, cfg, f4), c);
    EXPECT_EQ(winograd_grad_inputs(dy, g, cfg, f2), gi);
    EXPECT_EQ(winograd_grad_weights(d, dy, cfg, f32), gw);
    EXPECT_EQ(fft_forward_layer(d, g, cfg, 16), ff);
  }
}

}  // namespace
}  // namespace fastconv
