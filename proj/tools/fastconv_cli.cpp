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

// Command-line driver: accuracy, complexity, bench, gen.
//
// Exit status: 0 success, 1 usage error, 2 verification failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "fastconv/bench/commands.hpp"
#include "fastconv/parallel.hpp"

namespace {

using namespace fastconv;
using namespace fastconv::bench;

constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

struct Common {
  std::string suite = "vgg-e";
  std::string algos = "direct,f2x2,f4x4";
  std::string layers;
  std::string precision = "fp32";
  std::uint64_t seed = 1;
  double scale = 1.0;
  bool scale_channels = false;
  std::size_t batch = 1;
  std::size_t repeats = 3;
  std::size_t threads = 0;
  std::size_t fft_tile = 16;
  std::string format = "text";
  std::string out;
  bool zero_filters = false;
};

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size() && !s.empty()) {
    const std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_output_flags(CLI::App* cmd, Common& o) {
  cmd->add_option("--format", o.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  cmd->add_option("--out", o.out, "write the report to FILE");
}

void add_run_flags(CLI::App* cmd, Common& o) {
  cmd->add_option("--suite", o.suite, "vgg-e or a JSON suite file");
  cmd->add_option("--algos", o.algos,
                  "comma list of direct, f2x2, f4x4, fft, fft-fast");
  cmd->add_option("--layers", o.layers, "comma list of layer labels");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--scale", o.scale, "shrink H and W by this factor")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--scale-channels", o.scale_channels,
                "also shrink C and K by --scale");
  cmd->add_option("--batch", o.batch, "images per layer (N)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  cmd->add_option("--fft-tile", o.fft_tile, "FFT tile size (power of two)");
  add_output_flags(cmd, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fastconv: Winograd/FFT convolution accuracy, complexity and "
               "timing"};
  app.require_subcommand(1);
  Common o;

  auto* acc = app.add_subcommand("accuracy", "max element error vs fp64 direct");
  add_run_flags(acc, o);
  acc->add_option("--precision", o.precision, "fp32 or fp16")
      ->check(CLI::IsMember({"fp32", "fp16", "fp16-sim"}));
  acc->add_flag("--zero-filters", o.zero_filters,
                "use all-zero filters (smoke test; zero errors expected)");

  auto* cx = app.add_subcommand("complexity", "normalized complexity tables");
  std::string table = "winograd";
  cx->add_option("table", table, "winograd, fft, fft-fast or layer-costs")
      ->check(CLI::IsMember({"winograd", "fft", "fft-fast", "layer-costs"}));
  cx->add_option("--suite", o.suite, "suite for layer-costs");
  add_output_flags(cx, o);

  auto* bn = app.add_subcommand("bench", "wall time and effective GFLOPS");
  add_run_flags(bn, o);
  bn->add_option("--repeats", o.repeats, "timed runs per layer (best kept)")
      ->check(CLI::PositiveNumber);

  auto* gn = app.add_subcommand("gen", "generate F(m,r) transform matrices");
  GenOptions gen;
  std::string points;
  gn->add_option("m", gen.m, "outputs per tile")->required()->check(
      CLI::PositiveNumber);
  gn->add_option("r", gen.r, "filter taps")->required()->check(
      CLI::PositiveNumber);
  gn->add_option("--points", points,
                 "comma list of m+r-2 finite points, e.g. 0,1,-1,1/2");
  gn->add_option("--trials", gen.trials, "random exactness checks");
  gn->add_option("--seed", gen.seed, "RNG seed for the self-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (o.threads) set_num_threads(o.threads);
    const Format format = parse_format(o.format);

    if (*acc) {
      AccuracyOptions opts;
      opts.suite = o.suite;
      opts.layers = split_labels(o.layers);
      opts.algos = parse_algo_list(o.algos);
      opts.precision = parse_precision(o.precision);
      opts.seed = o.seed;
      opts.scale = o.scale;
      opts.scale_channels = o.scale_channels;
      opts.batch = o.batch;
      opts.fft_tile = o.fft_tile;
      opts.zero_filters = o.zero_filters;
      const RunReport report = run_accuracy(opts);
      Output out(o.out);
      write_table(out.stream(), accuracy_table(report), format);
      if (!o.zero_filters) {
        const auto zeros = zero_error_rows(report);
        for (const auto& z : zeros)
          std::cerr << "verification failed: " << z.algo << " on layer "
                    << z.layer << " reproduced the oracle exactly\n";
        if (!zeros.empty()) return kVerifyFailed;
      }
      return 0;
    }
    if (*cx) {
      Output out(o.out);
      const LayerSuite suite = resolve_suite(o.suite);
      write_table(out.stream(),
                  complexity_table(parse_complexity_table(table), suite, format),
                  format);
      return 0;
    }
    if (*bn) {
      BenchOptions opts;
      opts.suite = o.suite;
      opts.layers = split_labels(o.layers);
      opts.algos = parse_algo_list(o.algos);
      opts.batch = o.batch;
      opts.repeats = o.repeats;
      opts.seed = o.seed;
      opts.scale = o.scale;
      opts.scale_channels = o.scale_channels;
      opts.fft_tile = o.fft_tile;
      const RunReport report = run_bench(opts, &std::cerr);
      Output out(o.out);
      write_table(out.stream(), bench_table(report), format);
      return 0;
    }
    if (*gn) {
      if (!points.empty()) gen.points = points;
      const GenResult g = run_gen(gen);
      write_gen(std::cout, g);
      return g.verified ? 0 : kVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
