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

#ifndef FASTCONV_TENSOR_HPP_
#define FASTCONV_TENSOR_HPP_

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fastconv {

// Element precision of a computation. fp16_sim stores binary16-rounded
// values in fp32 containers; arithmetic never drops below fp32.
enum class Precision { fp32, fp16_sim, fp64 };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view name);

struct Shape4 {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t n3 = 0;

  constexpr std::size_t size() const { return n0 * n1 * n2 * n3; }
  friend constexpr bool operator==(const Shape4&, const Shape4&) = default;
};

std::string to_string(const Shape4& s);

// Dense (image|filter, channel, row, col) array in row-major order.
template <typename T>
class Tensor4 {
 public:
  using value_type = T;

  Tensor4() = default;
  explicit Tensor4(Shape4 shape, T value = T{0})
      : shape_(shape), data_(shape.size(), value) {}
  Tensor4(Shape4 shape, std::vector<T> values)
      : shape_(shape), data_(std::move(values)) {
    if (data_.size() != shape_.size())
      throw std::invalid_argument("Tensor4: " + std::to_string(data_.size()) +
                                  " values for shape " + to_string(shape_));
  }

  const Shape4& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  std::size_t offset(std::size_t i, std::size_t c, std::size_t y,
                     std::size_t x) const {
    assert(i < shape_.n0 && c < shape_.n1 && y < shape_.n2 && x < shape_.n3);
    return ((i * shape_.n1 + c) * shape_.n2 + y) * shape_.n3 + x;
  }

  T& operator()(std::size_t i, std::size_t c, std::size_t y, std::size_t x) {
    return data_[offset(i, c, y, x)];
  }
  const T& operator()(std::size_t i, std::size_t c, std::size_t y,
                      std::size_t x) const {
    return data_[offset(i, c, y, x)];
  }

  // Bounds-checked access.
  T& at(std::size_t i, std::size_t c, std::size_t y, std::size_t x) {
    check(i, c, y, x);
    return data_[offset(i, c, y, x)];
  }
  const T& at(std::size_t i, std::size_t c, std::size_t y,
              std::size_t x) const {
    check(i, c, y, x);
    return data_[offset(i, c, y, x)];
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  // Contiguous n2 x n3 plane for (i, c).
  std::span<T> plane(std::size_t i, std::size_t c) {
    return std::span<T>(data_).subspan(offset(i, c, 0, 0),
                                       shape_.n2 * shape_.n3);
  }
  std::span<const T> plane(std::size_t i, std::size_t c) const {
    return std::span<const T>(data_).subspan(offset(i, c, 0, 0),
                                             shape_.n2 * shape_.n3);
  }

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  void check(std::size_t i, std::size_t c, std::size_t y,
             std::size_t x) const {
    if (i >= shape_.n0 || c >= shape_.n1 || y >= shape_.n2 || x >= shape_.n3)
      throw std::out_of_range("Tensor4 index out of range for shape " +
                              to_string(shape_));
  }

  Shape4 shape_;
  std::vector<T> data_;
};

using Tensor4f = Tensor4<float>;
using Tensor4d = Tensor4<double>;

// Fills t with uniform values in [lo, hi) from a splitmix64 counter stream.
// Element j of the row-major order depends only on (seed, j).
template <typename T>
void fill_uniform(Tensor4<T>& t, std::uint64_t seed, double lo, double hi);

template <typename T>
Tensor4<T> uniform_tensor(Shape4 shape, std::uint64_t seed, double lo = -1.0,
                          double hi = 1.0) {
  Tensor4<T> t(shape);
  fill_uniform(t, seed, lo, hi);
  return t;
}

// Nearest IEEE binary16 value, ties to even. Throws std::overflow_error for
// |x| > 65504.
float round_to_fp16(double x);

template <typename T>
Tensor4f quantize_fp16(const Tensor4<T>& t);

template <typename A, typename B>
double max_abs_error(const Tensor4<A>& a, const Tensor4<B>& b);

template <typename To, typename From>
Tensor4<To> tensor_cast(const Tensor4<From>& t) {
  std::vector<To> out(t.size());
  auto in = t.data();
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<To>(in[j]);
  return Tensor4<To>(t.shape(), std::move(out));
}

template <typename T>
double dot(const Tensor4<T>& a, const Tensor4<T>& b) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("dot: shape mismatch");
  double s = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t j = 0; j < x.size(); ++j)
    s += static_cast<double>(x[j]) * static_cast<double>(y[j]);
  return s;
}

}  // namespace fastconv

#endif  // FASTCONV_TENSOR_HPP_
