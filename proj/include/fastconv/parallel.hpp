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

#ifndef FASTCONV_PARALLEL_HPP_
#define FASTCONV_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace fastconv {

// Worker cap for parallel_for; 0 restores the hardware default.
void set_num_threads(std::size_t n);
std::size_t num_threads();

// Calls body(begin, end) on disjoint contiguous ranges covering [0, n).
// Callers must make each index's result independent of the partition.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fastconv

#endif  // FASTCONV_PARALLEL_HPP_
