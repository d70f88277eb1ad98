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

#include "fastconv/generator.hpp"

#include <random>
#include <set>
#include <string>

namespace fastconv {
namespace {

// Coefficients (ascending powers) of prod (x - roots[j]).
std::vector<Rational> poly_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> coef{Rational(1)};
  for (const Rational& a : roots) {
    std::vector<Rational> next(coef.size() + 1, Rational(0));
    for (std::size_t k = 0; k < coef.size(); ++k) {
      next[k + 1] += coef[k];
      next[k] -= a * coef[k];
    }
    coef = std::move(next);
  }
  return coef;
}

Rational power(const Rational& a, std::size_t k) {
  Rational p(1);
  for (std::size_t j = 0; j < k; ++j) p *= a;
  return p;
}

}  // namespace

PointSet default_points(std::size_t m, std::size_t r) {
  const std::size_t alpha = m + r - 1;
  const std::size_t want = alpha >= 1 ? alpha - 1 : 0;
  PointSet pts;
  if (want == 0) return pts;
  pts.finite.push_back(Rational(0));
  std::vector<Rational> magnitudes{Rational(1), Rational(2), Rational(1, 2),
                                   Rational(4), Rational(1, 4)};
  long k = 3;
  std::size_t next = 0;
  while (pts.finite.size() < want) {
    if (next == magnitudes.size()) {
      if (k == 4) ++k;
      magnitudes.push_back(Rational(k));
      magnitudes.push_back(Rational(1, k));
      ++k;
    }
    const Rational& mag = magnitudes[next++];
    pts.finite.push_back(mag);
    if (pts.finite.size() < want) pts.finite.push_back(-mag);
  }
  return pts;
}

PointSet parse_points(std::string_view text) {
  PointSet pts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::string item(text.substr(start, end - start));
    std::erase_if(item, [](char ch) { return ch == ' '; });
    if (!item.empty() && item != "inf" && item != "infinity")
      pts.finite.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return pts;
}

WinogradAlgorithm generate(std::size_t m, std::size_t r, const PointSet& pts) {
  if (m < 1 || r < 1)
    throw std::invalid_argument("generate: m and r must be >= 1");
  const std::size_t alpha = m + r - 1;
  if (pts.size() != alpha)
    throw std::invalid_argument(
        "generate: F(" + std::to_string(m) + "," + std::to_string(r) +
        ") needs " + std::to_string(alpha - 1) + " finite points plus infinity, got " +
        std::to_string(pts.finite.size()));
  std::set<Rational> seen;
  for (const Rational& a : pts.finite)
    if (!seen.insert(a).second)
      throw std::invalid_argument("generate: duplicate point " + to_string(a));

  const auto& a = pts.finite;
  const std::size_t n = a.size();  // alpha - 1
  Matrix<Rational> bt(alpha, alpha);
  Matrix<Rational> g(alpha, r);
  Matrix<Rational> at(m, alpha);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> others;
    Rational f(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(a[j]);
      f *= a[i] - a[j];
    }
    const Rational sign = (i == 0 && f < 0) ? Rational(-1) : Rational(1);
    const auto coef = poly_from_roots(others);
    for (std::size_t k = 0; k < coef.size(); ++k) bt(i, k) = sign * coef[k];
    for (std::size_t k = 0; k < r; ++k) g(i, k) = sign * power(a[i], k) / f;
    for (std::size_t k = 0; k < m; ++k) at(k, i) = power(a[i], k);
  }
  const auto full = poly_from_roots(a);
  for (std::size_t k = 0; k < alpha; ++k) bt(n, k) = full[k];
  g(n, r - 1) = Rational(1);
  at(m - 1, n) = Rational(1);

  return WinogradAlgorithm(m, r, std::move(bt), std::move(g), std::move(at));
}

Rational max_transform_magnitude(const WinogradAlgorithm& alg) {
  Rational best(0);
  for (const auto* mat : {&alg.data_transform(), &alg.filter_transform(),
                          &alg.inverse_transform()})
    for (const Rational& v : mat->values()) best = std::max(best, Rational(abs(v)));
  return best;
}

bool verify_exact(const WinogradAlgorithm& alg, std::size_t trials,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  auto draw = [&] { return Rational(num(rng), den(rng)); };

  const std::size_t alpha = alg.alpha();
  const std::size_t r = alg.r();
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> d(alpha), g(r);
    for (auto& v : d) v = draw();
    for (auto& v : g) v = draw();
    if (filter_tile_1d<Rational>(alg, d, g) !=
        fir_valid<Rational>(d, g))
      return false;

    Matrix<Rational> d2(alpha, alpha), g2(r, r);
    for (auto& v : d2.values()) v = draw();
    for (auto& v : g2.values()) v = draw();
    if (filter_tile_2d(alg, d2, g2) != correlate_valid_2d(d2, g2)) return false;
  }
  return true;
}

}  // namespace fastconv
