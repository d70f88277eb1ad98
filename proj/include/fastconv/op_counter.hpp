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

#ifndef FASTCONV_OP_COUNTER_HPP_
#define FASTCONV_OP_COUNTER_HPP_

#include <atomic>
#include <cstdint>

namespace fastconv {

// Multiply tally filled in by instrumented kernels. Only the multiplication
// stage (element-wise products / batched matmuls) is counted, never the
// transforms.
struct OpCounter {
  std::atomic<std::uint64_t> real_multiplies{0};
  std::atomic<std::uint64_t> complex_multiplies{0};

  void add_real(std::uint64_t n) {
    real_multiplies.fetch_add(n, std::memory_order_relaxed);
  }
  void add_complex(std::uint64_t n) {
    complex_multiplies.fetch_add(n, std::memory_order_relaxed);
  }
  void reset() {
    real_multiplies = 0;
    complex_multiplies = 0;
  }
};

inline void count_real(OpCounter* counter, std::uint64_t n) {
  if (counter) counter->add_real(n);
}
inline void count_complex(OpCounter* counter, std::uint64_t n) {
  if (counter) counter->add_complex(n);
}

}  // namespace fastconv

#endif  // FASTCONV_OP_COUNTER_HPP_
