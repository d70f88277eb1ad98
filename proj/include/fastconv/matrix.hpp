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

#ifndef FASTCONV_MATRIX_HPP_
#define FASTCONV_MATRIX_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fastconv {

// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);  // "p/q", or "p" when q == 1
Rational parse_rational(std::string_view text);

template <typename T>
T rational_to(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>)
    return q;
  else
    return q.template convert_to<T>();
}

// Small dense row-major matrix. Used for transform matrices and tiles, in
// Rational, double or float.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T value = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols)
      throw std::invalid_argument("Matrix: wrong element count");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_)
        throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  T& at(std::size_t r, std::size_t c) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::at");
    return (*this)(r, c);
  }
  const T& at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::at");
    return (*this)(r, c);
  }

  const std::vector<T>& values() const { return data_; }
  std::vector<T>& values() { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  template <typename U>
  Matrix<U> cast() const {
    std::vector<U> out;
    out.reserve(data_.size());
    for (const T& v : data_) {
      if constexpr (std::is_same_v<T, Rational>)
        out.push_back(rational_to<U>(v));
      else
        out.push_back(static_cast<U>(v));
    }
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("Matrix product: " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + " * " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("Matrix sum: shape mismatch");
  Matrix<T> out = a;
  for (std::size_t j = 0; j < out.values().size(); ++j)
    out.values()[j] += b.values()[j];
  return out;
}

template <typename T>
Matrix<T> hadamard(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hadamard: shape mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t j = 0; j < out.values().size(); ++j)
    out.values()[j] = a.values()[j] * b.values()[j];
  return out;
}

// One row per line, entries separated by single spaces.
std::string format_matrix(const Matrix<Rational>& m);

}  // namespace fastconv

#endif  // FASTCONV_MATRIX_HPP_
