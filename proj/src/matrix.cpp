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

#include "fastconv/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fastconv {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

// Optional sign followed by at least one decimal digit.
bool is_integer(std::string_view t) {
  if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
  return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char ch) {
    return std::isdigit(ch) != 0;
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const std::string s(text);
  const auto slash = s.find('/');
  if (!is_integer(s.substr(0, slash)) ||
      (slash != std::string::npos && !is_integer(s.substr(slash + 1))))
    throw std::invalid_argument("bad rational '" + s + "'");
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(cpp_int(s));
    const cpp_int num(s.substr(0, slash));
    const cpp_int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad rational '" + s + "': " + e.what());
  }
}

std::string format_matrix(const Matrix<Rational>& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << to_string(m(r, c));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fastconv
