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

#include <cmath>
#include <random>
#include <vector>

#include "fastconv/generator.hpp"
#include "fastconv/winograd.hpp"

namespace fastconv {
namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

std::vector<Rational> row(const Matrix<Rational>& m, std::size_t r) {
  std::vector<Rational> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

TEST(Builtin, F23Matrices) {
  const auto a = builtin_algorithm(2, 3);
  EXPECT_EQ(a.alpha(), 4u);
  EXPECT_EQ(row(a.filter_transform(), 1), (std::vector{q(1, 2), q(1, 2), q(1, 2)}));
  EXPECT_EQ(row(a.data_transform(), 0), (std::vector{q(1), q(0), q(-1), q(0)}));
  EXPECT_EQ(row(a.inverse_transform(), 0), (std::vector{q(1), q(1), q(1), q(0)}));
  EXPECT_EQ(a.name(), "F(2,3)");
}

TEST(Builtin, F43Matrices) {
  const auto a = builtin_algorithm(4, 3);
  EXPECT_EQ(a.alpha(), 6u);
  EXPECT_EQ(row(a.filter_transform(), 0), (std::vector{q(1, 4), q(0), q(0)}));
  EXPECT_EQ(row(a.data_transform(), 0),
            (std::vector{q(4), q(0), q(-5), q(0), q(1), q(0)}));
  EXPECT_EQ(row(a.inverse_transform(), 1),
            (std::vector{q(0), q(1), q(-1), q(2), q(-2), q(0)}));
}

TEST(Builtin, F32Matrices) {
  const auto a = builtin_algorithm(3, 2);
  EXPECT_EQ(row(a.inverse_transform(), 2), (std::vector{q(0), q(1), q(1), q(1)}));
  EXPECT_EQ(a.filter_transform().cols(), 2u);
  EXPECT_THROW(builtin_algorithm(6, 3), std::invalid_argument);
}

TEST(Builtin, DimensionContract) {
  for (auto [m, r] : {std::pair{2, 3}, {3, 2}, {4, 3}}) {
    const auto a = builtin_algorithm(m, r);
    EXPECT_EQ(a.data_transform().rows(), a.alpha());
    EXPECT_EQ(a.data_transform().cols(), a.alpha());
    EXPECT_EQ(a.filter_transform().rows(), a.alpha());
    EXPECT_EQ(a.filter_transform().cols(), a.r());
    EXPECT_EQ(a.inverse_transform().rows(), a.m());
    EXPECT_EQ(a.inverse_transform().cols(), a.alpha());
  }
  EXPECT_THROW(WinogradAlgorithm(2, 3, Matrix<Rational>(4, 4), Matrix<Rational>(4, 2),
                                 Matrix<Rational>(2, 4)),
               std::invalid_argument);
}

TEST(MinimalMultiplies, Counts) {
  EXPECT_EQ(minimal_multiplies_1d(2, 3), 4u);
  EXPECT_EQ(minimal_multiplies_1d(1, 5), 5u);
  EXPECT_EQ(minimal_multiplies_1d(4, 3), 6u);
  EXPECT_EQ(minimal_multiplies_2d(4, 4, 3, 3), 36u);
}

TEST(FilterTile1d, HandCases) {
  const auto f23 = builtin_algorithm(2, 3);
  const std::vector<double> d{1, 2, 3, 4}, g{1, 1, 1}, z{0, 0, 0};
  EXPECT_EQ(filter_tile_1d<double>(f23, d, g), (std::vector<double>{6, 9}));
  EXPECT_EQ(filter_tile_1d<double>(f23, d, z), (std::vector<double>{0, 0}));
  const auto f43 = builtin_algorithm(4, 3);
  const std::vector<Rational> imp{q(1), q(0), q(0), q(0), q(0), q(0)};
  const std::vector<Rational> taps{q(1), q(2), q(3)};
  EXPECT_EQ(filter_tile_1d<Rational>(f43, imp, taps),
            fir_valid<Rational>(imp, taps));
  EXPECT_EQ(filter_tile_1d<Rational>(f43, imp, taps),
            (std::vector{q(1), q(0), q(0), q(0)}));
  OpCounter counter;
  filter_tile_1d<double>(f23, d, g, &counter);
  EXPECT_EQ(counter.real_multiplies, 4u);
  EXPECT_THROW(filter_tile_1d<double>(f23, g, g), std::invalid_argument);
}

Matrix<Rational> random_rational(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  Matrix<Rational> m(r, c);
  for (auto& v : m.values()) v = Rational(num(rng), den(rng));
  return m;
}

TEST(FilterTile2d, ExactOnRandomRationals) {
  std::mt19937_64 rng(5);
  for (auto [m, r] : {std::pair{2, 3}, {3, 2}, {4, 3}}) {
    const auto a = builtin_algorithm(m, r);
    for (int t = 0; t < 30; ++t) {
      const auto d = random_rational(a.alpha(), a.alpha(), rng);
      const auto g = random_rational(a.r(), a.r(), rng);
      OpCounter counter;
      EXPECT_EQ(filter_tile_2d(a, d, g, &counter), correlate_valid_2d(d, g));
      EXPECT_EQ(counter.real_multiplies, a.alpha() * a.alpha());
    }
  }
}

TEST(FilterTile2d, ConstantAndZeroCases) {
  const auto a = builtin_algorithm(2, 3);
  const Matrix<double> ones4(4, 4, 1.0), ones3(3, 3, 1.0), zero3(3, 3);
  EXPECT_EQ(filter_tile_2d(a, ones4, ones3), Matrix<double>(2, 2, 9.0));
  const auto b = builtin_algorithm(4, 3);
  EXPECT_EQ(filter_tile_2d(b, Matrix<double>(6, 6, 0.7), zero3), Matrix<double>(4, 4));
}

TEST(Transforms, ComposeToFilterTile) {
  const auto a = builtin_algorithm(2, 3);
  const Matrix<Rational> ones(3, 3, q(1));
  const auto u = transform_filter(a, ones);
  EXPECT_EQ(u(0, 0), q(1));
  EXPECT_EQ(u(1, 1), q(9, 4));
  EXPECT_EQ(transform_data(a, Matrix<Rational>(4, 4)), Matrix<Rational>(4, 4));
  EXPECT_EQ(inverse_transform(a, Matrix<Rational>(4, 4)), Matrix<Rational>(2, 2));
  std::mt19937_64 rng(6);
  const auto d = random_rational(4, 4, rng);
  const auto g = random_rational(3, 3, rng);
  EXPECT_EQ(inverse_transform(a, hadamard(transform_filter(a, g), transform_data(a, d))),
            filter_tile_2d(a, d, g));
  EXPECT_THROW(transform_data(a, Matrix<Rational>(3, 3)), std::invalid_argument);
}

TEST(Transforms, NonSquareNesting) {
  const auto rows = builtin_algorithm(2, 3), cols = builtin_algorithm(3, 2);
  std::mt19937_64 rng(7);
  const auto d = random_rational(4, 4, rng);
  const auto g = random_rational(3, 2, rng);
  EXPECT_EQ(filter_tile_2d(rows, cols, d, g), correlate_valid_2d(d, g));
}

TEST(Transforms, RankOneFactorizes) {
  const auto a = builtin_algorithm(4, 3);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-1, 1);
  std::vector<double> u(6), v(6), p(3), s(3);
  for (auto* vec : {&u, &v, &p, &s})
    for (double& x : *vec) x = dist(rng);
  Matrix<double> d(6, 6), g(3, 3);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) d(i, j) = u[i] * v[j];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = p[i] * s[j];
  const auto y = filter_tile_2d(a, d, g);
  const auto yr = filter_tile_1d<double>(a, u, p);
  const auto yc = filter_tile_1d<double>(a, v, s);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(y(i, j), yr[i] * yc[j], 1e-12);
}

TEST(Transforms, FlopCounts) {
  EXPECT_EQ(transform_flop_counts(builtin_algorithm(2, 3)), (TransformFlops{32, 28, 24}));
  EXPECT_EQ(transform_flop_counts(builtin_algorithm(4, 3)), (TransformFlops{156, 72, 100}));
  EXPECT_THROW(transform_flop_counts(builtin_algorithm(3, 2)), NotProfiledError);
  EXPECT_THROW(transform_flop_counts(generate(6, 3)), NotProfiledError);
  // F(3x3, 2x2) keeps the 36/16 multiply reduction.
  EXPECT_EQ(minimal_multiplies_2d(3, 3, 2, 2), 16u);
}

// Single tiles at fp32 with a 64-channel reduction in transform space,
// compared with an exact double reference: larger tiles lose more accuracy.
TEST(Transforms, LargerTileIsLessAccurate) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1, 1);
  auto worst = [&](const WinogradAlgorithm& a) {
    const auto t = lower<float>(a);
    const std::size_t al = a.alpha(), channels = 64;
    double err = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Matrix<float> acc(al, al);
      Matrix<double> ref(a.m(), a.m());
      for (std::size_t c = 0; c < channels; ++c) {
        Matrix<float> d(al, al), g(3, 3);
        for (auto& x : d.values()) x = static_cast<float>(dist(rng));
        for (auto& x : g.values()) x = static_cast<float>(dist(rng));
        acc = acc + hadamard(t.g * g * t.g.transpose(), t.bt * d * t.bt.transpose());
        const auto r = correlate_valid_2d(d.cast<double>(), g.cast<double>());
        ref = ref + r;
      }
      const auto y = t.at * acc * t.at.transpose();
      for (std::size_t j = 0; j < y.values().size(); ++j)
        err = std::max(err, std::fabs(y.values()[j] - ref.values()[j]));
    }
    return err;
  };
  const double e2 = worst(builtin_algorithm(2, 3));
  const double e4 = worst(builtin_algorithm(4, 3));
  EXPECT_GT(e2, 0.0);
  EXPECT_GE(e4, e2);
}

}  // namespace
}  // namespace fastconv
