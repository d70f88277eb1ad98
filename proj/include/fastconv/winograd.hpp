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

#ifndef FASTCONV_WINOGRAD_HPP_
#define FASTCONV_WINOGRAD_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastconv/matrix.hpp"
#include "fastconv/op_counter.hpp"

namespace fastconv {

// Per-tile floating point instruction counts of the 2D transforms.
struct TransformFlops {
  std::uint64_t data = 0;     // beta
  std::uint64_t filter = 0;   // gamma
  std::uint64_t inverse = 0;  // delta
  friend bool operator==(const TransformFlops&, const TransformFlops&) = default;
};

class NotProfiledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimal filtering algorithm F(m, r): m outputs of an r-tap FIR filter from
// alpha = m + r - 1 inputs using alpha multiplies,
//   y = AT [ (G g) .* (BT d) ].
// Matrices are exact rationals; kernels lower them once to float/double.
class WinogradAlgorithm {
 public:
  WinogradAlgorithm(std::size_t m, std::size_t r, Matrix<Rational> bt,
                    Matrix<Rational> g, Matrix<Rational> at,
                    std::optional<TransformFlops> flops = std::nullopt);

  std::size_t m() const { return m_; }
  std::size_t r() const { return r_; }
  std::size_t alpha() const { return m_ + r_ - 1; }

  const Matrix<Rational>& data_transform() const { return bt_; }     // BT
  const Matrix<Rational>& filter_transform() const { return g_; }    // G
  const Matrix<Rational>& inverse_transform() const { return at_; }  // AT

  const std::optional<TransformFlops>& flops() const { return flops_; }
  std::string name() const;

 private:
  std::size_t m_;
  std::size_t r_;
  Matrix<Rational> bt_;
  Matrix<Rational> g_;
  Matrix<Rational> at_;
  std::optional<TransformFlops> flops_;
};

// F(2,3), F(3,2) and F(4,3) with their published matrices. Other sizes
// throw std::invalid_argument; use generate() for those.
WinogradAlgorithm builtin_algorithm(std::size_t m, std::size_t r);

constexpr std::size_t minimal_multiplies_1d(std::size_t m, std::size_t r) {
  return m + r - 1;
}
constexpr std::size_t minimal_multiplies_2d(std::size_t m, std::size_t n,
                                            std::size_t r, std::size_t s) {
  return minimal_multiplies_1d(m, r) * minimal_multiplies_1d(n, s);
}

// (beta, gamma, delta) for F(m x m, r x r). Throws NotProfiledError when the
// algorithm carries no counts.
TransformFlops transform_flop_counts(const WinogradAlgorithm& alg);

template <typename T>
struct LoweredTransforms {
  Matrix<T> bt;
  Matrix<T> g;
  Matrix<T> at;
};

template <typename T>
LoweredTransforms<T> lower(const WinogradAlgorithm& alg) {
  return {alg.data_transform().cast<T>(), alg.filter_transform().cast<T>(),
          alg.inverse_transform().cast<T>()};
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// left * x * right^T
template <typename T>
Matrix<T> sandwich(const Matrix<T>& left, const Matrix<T>& x,
                   const Matrix<T>& right) {
  return left * x * right.transpose();
}

}  // namespace detail

template <typename T>
std::vector<T> filter_tile_1d(const WinogradAlgorithm& alg,
                              std::span<const T> d, std::span<const T> g,
                              OpCounter* counter = nullptr) {
  detail::require(d.size() == alg.alpha() && g.size() == alg.r(),
                  "filter_tile_1d: expected " + std::to_string(alg.alpha()) +
                      " inputs and " + std::to_string(alg.r()) + " taps");
  const auto t = lower<T>(alg);
  const Matrix<T> dv(d.size(), 1, std::vector<T>(d.begin(), d.end()));
  const Matrix<T> gv(g.size(), 1, std::vector<T>(g.begin(), g.end()));
  const Matrix<T> prod = hadamard(t.g * gv, t.bt * dv);
  count_real(counter, prod.rows());
  return (t.at * prod).values();
}

// F(m x n, r x s) transforms; rows use `ra`, columns use `ca`.
template <typename T>
Matrix<T> transform_filter(const WinogradAlgorithm& ra,
                           const WinogradAlgorithm& ca, const Matrix<T>& g) {
  detail::require(g.rows() == ra.r() && g.cols() == ca.r(),
                  "transform_filter: filter shape mismatch");
  return detail::sandwich(ra.filter_transform().cast<T>(), g,
                          ca.filter_transform().cast<T>());
}

template <typename T>
Matrix<T> transform_data(const WinogradAlgorithm& ra,
                         const WinogradAlgorithm& ca, const Matrix<T>& d) {
  detail::require(d.rows() == ra.alpha() && d.cols() == ca.alpha(),
                  "transform_data: tile shape mismatch");
  return detail::sandwich(ra.data_transform().cast<T>(), d,
                          ca.data_transform().cast<T>());
}

template <typename T>
Matrix<T> inverse_transform(const WinogradAlgorithm& ra,
                            const WinogradAlgorithm& ca, const Matrix<T>& m) {
  detail::require(m.rows() == ra.alpha() && m.cols() == ca.alpha(),
                  "inverse_transform: tile shape mismatch");
  return detail::sandwich(ra.inverse_transform().cast<T>(), m,
                          ca.inverse_transform().cast<T>());
}

template <typename T>
Matrix<T> filter_tile_2d(const WinogradAlgorithm& ra,
                         const WinogradAlgorithm& ca, const Matrix<T>& d,
                         const Matrix<T>& g, OpCounter* counter = nullptr) {
  const Matrix<T> u = transform_filter(ra, ca, g);
  const Matrix<T> v = transform_data(ra, ca, d);
  count_real(counter, u.values().size());
  return inverse_transform(ra, ca, hadamard(u, v));
}

// Square nesting F(m x m, r x r): Y = AT [ (G g GT) .* (BT d B) ] A.
template <typename T>
Matrix<T> transform_filter(const WinogradAlgorithm& alg, const Matrix<T>& g) {
  return transform_filter(alg, alg, g);
}
template <typename T>
Matrix<T> transform_data(const WinogradAlgorithm& alg, const Matrix<T>& d) {
  return transform_data(alg, alg, d);
}
template <typename T>
Matrix<T> inverse_transform(const WinogradAlgorithm& alg, const Matrix<T>& m) {
  return inverse_transform(alg, alg, m);
}
template <typename T>
Matrix<T> filter_tile_2d(const WinogradAlgorithm& alg, const Matrix<T>& d,
                         const Matrix<T>& g, OpCounter* counter = nullptr) {
  return filter_tile_2d(alg, alg, d, g, counter);
}

// Direct "valid" FIR filtering / 2D correlation; exact for Rational.
template <typename T>
std::vector<T> fir_valid(std::span<const T> d, std::span<const T> g) {
  detail::require(!g.empty() && d.size() >= g.size(), "fir_valid: sizes");
  std::vector<T> y(d.size() - g.size() + 1, T(0));
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t u = 0; u < g.size(); ++u) y[j] += d[j + u] * g[u];
  return y;
}

template <typename T>
Matrix<T> correlate_valid_2d(const Matrix<T>& d, const Matrix<T>& g) {
  detail::require(d.rows() >= g.rows() && d.cols() >= g.cols(),
                  "correlate_valid_2d: filter larger than data");
  Matrix<T> y(d.rows() - g.rows() + 1, d.cols() - g.cols() + 1);
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      for (std::size_t u = 0; u < g.rows(); ++u)
        for (std::size_t v = 0; v < g.cols(); ++v)
          y(i, j) += d(i + u, j + v) * g(u, v);
  return y;
}

}  // namespace fastconv

#endif  // FASTCONV_WINOGRAD_HPP_
