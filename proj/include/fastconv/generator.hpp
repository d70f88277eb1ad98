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

#ifndef FASTCONV_GENERATOR_HPP_
#define FASTCONV_GENERATOR_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "fastconv/matrix.hpp"
#include "fastconv/winograd.hpp"

namespace fastconv {

// Interpolation points for the Toom-Cook construction: distinct finite
// rationals plus the implicit point at infinity.
struct PointSet {
  std::vector<Rational> finite;

  std::size_t size() const { return finite.size() + 1; }
};

// 0, 1, -1, 2, -2, 1/2, -1/2, 4, -4, 1/4, -1/4, 3, -3, 1/3, -1/3, ...
// truncated to m + r - 2 finite points.
PointSet default_points(std::size_t m, std::size_t r);

// Parses a comma separated list such as "0,1,-1,1/2". Infinity is implicit.
PointSet parse_points(std::string_view text);

// Builds F(m, r) from the given points by Lagrange interpolation
// (Chinese remaindering modulo x - a_i, plus the leading coefficient for the
// point at infinity), then transposes the resulting linear convolution into
// a filtering algorithm:
//   G  rows: [1, a_i, ..., a_i^(r-1)] / f_i,  f_i = prod_{j != i}(a_i - a_j)
//   BT rows: coefficients of prod_{j != i}(x - a_j)
//   AT     : [a_i^k] transposed
// with [0 ... 0 1] rows for infinity. The first row of BT and G is negated
// when f_0 < 0, which reproduces the published F(4,3) and F(3,2) matrices.
// Throws std::invalid_argument on duplicate points or a wrong point count.
WinogradAlgorithm generate(std::size_t m, std::size_t r, const PointSet& pts);

inline WinogradAlgorithm generate(std::size_t m, std::size_t r) {
  return generate(m, r, default_points(m, r));
}

// Largest |entry| over BT, G and AT.
Rational max_transform_magnitude(const WinogradAlgorithm& alg);

// Checks AT((G g) .* (BT d)) == FIR(d, g) exactly on `trials` random small
// rationals, in both 1D and the 2D nesting.
bool verify_exact(const WinogradAlgorithm& alg, std::size_t trials,
                  std::uint64_t seed);

}  // namespace fastconv

#endif  // FASTCONV_GENERATOR_HPP_
