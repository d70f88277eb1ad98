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

#ifndef FASTCONV_BENCH_COMMANDS_HPP_
#define FASTCONV_BENCH_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastconv/bench/report.hpp"
#include "fastconv/bench/suite.hpp"
#include "fastconv/matrix.hpp"
#include "fastconv/tensor.hpp"
#include "fastconv/winograd.hpp"

namespace fastconv::bench {

enum class Algo { direct, f2x2, f4x4, fft, fft_fast };

// "direct" (alias "direct-fp32"), "f2x2", "f4x4", "fft", "fft-fast".
Algo parse_algo(std::string_view name);
std::string to_string(Algo a);
std::vector<Algo> parse_algo_list(std::string_view csv);

// Runs one algorithm at fp32 with its own accumulation order. fft uses
// ordinary complex products, fft-fast the 3-multiply CGEMM.
Tensor4f run_algo(Algo a, const Tensor4f& d, const Tensor4f& g,
                  const LayerConfig& cfg, std::size_t fft_tile = 16);

// Independent seeds for the inputs and filters of layer `index`.
std::uint64_t layer_seed(std::uint64_t seed, std::size_t index, bool filters);

struct AccuracyOptions {
  std::string suite = "vgg-e";
  // Empty: the accuracy-table rows for vgg-e, every layer otherwise.
  std::vector<std::string> layers;
  std::vector<Algo> algos{Algo::direct, Algo::f2x2, Algo::f4x4};
  Precision precision = Precision::fp32;
  std::uint64_t seed = 1;
  double scale = 1.0;
  bool scale_channels = false;
  std::size_t batch = 1;
  std::size_t fft_tile = 16;
  bool zero_filters = false;
};

// Inputs and filters uniform in [-1, 1]. Ground truth is the direct
// convolution accumulated in double on the unquantized inputs; with fp16
// the contenders see inputs rounded to binary16 and compute in float.
RunReport run_accuracy(const AccuracyOptions& opts);

// Rows with an error of exactly zero, which on random data means the
// contender aliased the oracle.
std::vector<AccuracyRow> zero_error_rows(const RunReport& r);

enum class ComplexityTable { winograd, fft, fft_fast, layer_costs };
ComplexityTable parse_complexity_table(std::string_view name);

// Text tables print 2 decimals; CSV keeps full precision.
Table complexity_table(ComplexityTable which, const LayerSuite& suite,
                       Format format);

struct BenchOptions {
  std::string suite = "vgg-e";
  std::vector<std::string> layers;
  std::vector<Algo> algos{Algo::direct, Algo::f2x2, Algo::f4x4};
  std::size_t batch = 1;
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  double scale = 1.0;
  bool scale_channels = false;
  std::size_t fft_tile = 16;
};

// Best-of-repeats wall time after one untimed warm-up run. Layers that
// run out of memory are reported as skipped.
RunReport run_bench(const BenchOptions& opts, std::ostream* notices = nullptr);

struct GenOptions {
  std::size_t m = 2;
  std::size_t r = 3;
  std::optional<std::string> points;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

struct GenResult {
  WinogradAlgorithm algorithm;
  Rational max_magnitude;
  bool verified;
};

GenResult run_gen(const GenOptions& opts);
void write_gen(std::ostream& out, const GenResult& g);

}  // namespace fastconv::bench

#endif  // FASTCONV_BENCH_COMMANDS_HPP_
