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

#include "fastconv/winograd.hpp"

namespace fastconv {

WinogradAlgorithm::WinogradAlgorithm(std::size_t m, std::size_t r,
                                     Matrix<Rational> bt, Matrix<Rational> g,
                                     Matrix<Rational> at,
                                     std::optional<TransformFlops> flops)
    : m_(m),
      r_(r),
      bt_(std::move(bt)),
      g_(std::move(g)),
      at_(std::move(at)),
      flops_(flops) {
  detail::require(m >= 1 && r >= 1, "WinogradAlgorithm: m, r must be >= 1");
  const std::size_t a = alpha();
  detail::require(bt_.rows() == a && bt_.cols() == a,
                  "WinogradAlgorithm: BT must be alpha x alpha");
  detail::require(g_.rows() == a && g_.cols() == r,
                  "WinogradAlgorithm: G must be alpha x r");
  detail::require(at_.rows() == m && at_.cols() == a,
                  "WinogradAlgorithm: AT must be m x alpha");
}

std::string WinogradAlgorithm::name() const {
  return "F(" + std::to_string(m_) + "," + std::to_string(r_) + ")";
}

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

WinogradAlgorithm f2_3() {
  Matrix<Rational> bt{{q(1), q(0), q(-1), q(0)},
                      {q(0), q(1), q(1), q(0)},
                      {q(0), q(-1), q(1), q(0)},
                      {q(0), q(1), q(0), q(-1)}};
  Matrix<Rational> g{{q(1), q(0), q(0)},
                     {q(1, 2), q(1, 2), q(1, 2)},
                     {q(1, 2), q(-1, 2), q(1, 2)},
                     {q(0), q(0), q(1)}};
  Matrix<Rational> at{{q(1), q(1), q(1), q(0)}, {q(0), q(1), q(-1), q(-1)}};
  return WinogradAlgorithm(2, 3, std::move(bt), std::move(g), std::move(at),
                           TransformFlops{32, 28, 24});
}

WinogradAlgorithm f3_2() {
  Matrix<Rational> bt{{q(1), q(0), q(-1), q(0)},
                      {q(0), q(1), q(1), q(0)},
                      {q(0), q(-1), q(1), q(0)},
                      {q(0), q(-1), q(0), q(1)}};
  Matrix<Rational> g{{q(1), q(0)},
                     {q(1, 2), q(1, 2)},
                     {q(1, 2), q(-1, 2)},
                     {q(0), q(1)}};
  Matrix<Rational> at{{q(1), q(1), q(1), q(0)},
                      {q(0), q(1), q(-1), q(0)},
                      {q(0), q(1), q(1), q(1)}};
  // Transform instruction counts for this one are not published.
  return WinogradAlgorithm(3, 2, std::move(bt), std::move(g), std::move(at));
}

WinogradAlgorithm f4_3() {
  Matrix<Rational> bt{{q(4), q(0), q(-5), q(0), q(1), q(0)},
                      {q(0), q(-4), q(-4), q(1), q(1), q(0)},
                      {q(0), q(4), q(-4), q(-1), q(1), q(0)},
                      {q(0), q(-2), q(-1), q(2), q(1), q(0)},
                      {q(0), q(2), q(-1), q(-2), q(1), q(0)},
                      {q(0), q(4), q(0), q(-5), q(0), q(1)}};
  Matrix<Rational> g{{q(1, 4), q(0), q(0)},
                     {q(-1, 6), q(-1, 6), q(-1, 6)},
                     {q(-1, 6), q(1, 6), q(-1, 6)},
                     {q(1, 24), q(1, 12), q(1, 6)},
                     {q(1, 24), q(-1, 12), q(1, 6)},
                     {q(0), q(0), q(1)}};
  Matrix<Rational> at{{q(1), q(1), q(1), q(1), q(1), q(0)},
                      {q(0), q(1), q(-1), q(2), q(-2), q(0)},
                      {q(0), q(1), q(1), q(4), q(4), q(0)},
                      {q(0), q(1), q(-1), q(8), q(-8), q(1)}};
  // 1D: 13, 8 and 10 instructions, nested as 13(6+6), 8(3+6), 10(6+4).
  return WinogradAlgorithm(4, 3, std::move(bt), std::move(g), std::move(at),
                           TransformFlops{156, 72, 100});
}

}  // namespace

WinogradAlgorithm builtin_algorithm(std::size_t m, std::size_t r) {
  if (m == 2 && r == 3) return f2_3();
  if (m == 3 && r == 2) return f3_2();
  if (m == 4 && r == 3) return f4_3();
  throw std::invalid_argument("no builtin algorithm for F(" +
                              std::to_string(m) + "," + std::to_string(r) +
                              "); generate one instead");
}

TransformFlops transform_flop_counts(const WinogradAlgorithm& alg) {
  if (!alg.flops())
    throw NotProfiledError(alg.name() + ": transform flop counts not profiled");
  return *alg.flops();
}

}  // namespace fastconv
