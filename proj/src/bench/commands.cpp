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

#include "fastconv/bench/commands.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <new>
#include <ostream>
#include <stdexcept>

#include "fastconv/complexity.hpp"
#include "fastconv/fft_reference.hpp"
#include "fastconv/generator.hpp"
#include "fastconv/layer_engine.hpp"
#include "fastconv/reference_conv.hpp"

namespace fastconv::bench {

Algo parse_algo(std::string_view name) {
  if (name == "direct" || name == "direct-fp32") return Algo::direct;
  if (name == "f2x2") return Algo::f2x2;
  if (name == "f4x4") return Algo::f4x4;
  if (name == "fft") return Algo::fft;
  if (name == "fft-fast") return Algo::fft_fast;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string to_string(Algo a) {
  switch (a) {
    case Algo::direct: return "direct";
    case Algo::f2x2: return "f2x2";
    case Algo::f4x4: return "f4x4";
    case Algo::fft: return "fft";
    case Algo::fft_fast: return "fft-fast";
  }
  return "?";
}

std::vector<Algo> parse_algo_list(std::string_view csv) {
  std::vector<Algo> out;
  while (!csv.empty()) {
    const std::size_t comma = csv.find(',');
    const std::string_view item = csv.substr(0, comma);
    if (!item.empty()) out.push_back(parse_algo(item));
    csv = comma == std::string_view::npos ? std::string_view{}
                                          : csv.substr(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("empty algorithm list");
  return out;
}

namespace {

WinogradAlgorithm winograd_for(std::size_t m, const LayerConfig& cfg) {
  if (cfg.R != cfg.S)
    throw std::invalid_argument("Winograd layers need square filters");
  try {
    return builtin_algorithm(m, cfg.R);
  } catch (const std::invalid_argument&) {
    return generate(m, cfg.R);
  }
}

std::vector<LayerEntry> select_layers(const LayerSuite& suite,
                                      const std::vector<std::string>& labels,
                                      bool accuracy_default) {
  std::vector<std::string> want = labels;
  if (want.empty() && accuracy_default && suite.name == "vgg-e")
    want = vgg_e_accuracy_layers();
  if (want.empty()) return suite.layers;
  std::vector<LayerEntry> out;
  for (const auto& l : want) out.push_back(suite.find(l));
  return out;
}

Tensor4f make_filters(const LayerConfig& cfg, std::uint64_t seed, bool zero) {
  if (zero) return Tensor4f(cfg.filter_shape());
  return uniform_tensor<float>(cfg.filter_shape(), seed);
}

}  // namespace

std::uint64_t layer_seed(std::uint64_t seed, std::size_t index, bool filters) {
  // splitmix64 finalizer over a distinct counter per (layer, role).
  std::uint64_t z = seed + (2 * index + (filters ? 1 : 0) + 1) *
                               0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Tensor4f run_algo(Algo a, const Tensor4f& d, const Tensor4f& g,
                  const LayerConfig& cfg, std::size_t fft_tile) {
  switch (a) {
    case Algo::direct: return direct_forward<float, float>(d, g, cfg);
    case Algo::f2x2: return winograd_forward(d, g, cfg, winograd_for(2, cfg));
    case Algo::f4x4: return winograd_forward(d, g, cfg, winograd_for(4, cfg));
    case Algo::fft: return fft_forward_layer(d, g, cfg, fft_tile, {false, true});
    case Algo::fft_fast:
      return fft_forward_layer(d, g, cfg, fft_tile, {true, true});
  }
  throw std::logic_error("run_algo: bad algorithm");
}

RunReport run_accuracy(const AccuracyOptions& opts) {
  if (opts.precision == Precision::fp64)
    throw std::invalid_argument("accuracy: precision must be fp32 or fp16");
  const LayerSuite suite = resolve_suite(opts.suite);
  RunReport report{suite.name, opts.seed, {}, {}};
  const auto layers = select_layers(suite, opts.layers, true);
  for (std::size_t idx = 0; idx < layers.size(); ++idx) {
    LayerConfig cfg = scale_layer(layers[idx].cfg, opts.scale, opts.scale_channels);
    cfg.N = opts.batch;
    const Tensor4f d =
        uniform_tensor<float>(cfg.input_shape(), layer_seed(opts.seed, idx, false));
    const Tensor4f g = make_filters(cfg, layer_seed(opts.seed, idx, true),
                                    opts.zero_filters);
    const Tensor4d truth = direct_forward<double, float>(d, g, cfg);
    const bool half = opts.precision == Precision::fp16_sim;
    const Tensor4f dq = half ? quantize_fp16(d) : d;
    const Tensor4f gq = half ? quantize_fp16(g) : g;
    for (Algo a : opts.algos) {
      const Tensor4f y = run_algo(a, dq, gq, cfg, opts.fft_tile);
      report.accuracy.push_back({layers[idx].label, to_string(a),
                                 std::string(fastconv::to_string(opts.precision)),
                                 max_abs_error(y, truth)});
    }
  }
  return report;
}

std::vector<AccuracyRow> zero_error_rows(const RunReport& r) {
  std::vector<AccuracyRow> out;
  for (const AccuracyRow& a : r.accuracy)
    if (a.max_abs_err == 0.0) out.push_back(a);
  return out;
}

ComplexityTable parse_complexity_table(std::string_view name) {
  if (name == "winograd") return ComplexityTable::winograd;
  if (name == "fft") return ComplexityTable::fft;
  if (name == "fft-fast") return ComplexityTable::fft_fast;
  if (name == "layer-costs") return ComplexityTable::layer_costs;
  throw std::invalid_argument("unknown complexity table '" + std::string(name) +
                              "'");
}

Table complexity_table(ComplexityTable which, const LayerSuite& suite,
                       Format format) {
  auto num = [format](double x) {
    return format == Format::csv ? format_double(x) : format_fixed(x, 2);
  };
  Table t;
  if (which == ComplexityTable::layer_costs) {
    t.header = {"layer", "C", "H", "W", "K", "depth", "gflops", "direct_gmul",
                "f2x2_gmul", "f4x4_gmul", "f2x2_speedup", "f4x4_speedup"};
    t.notes.push_back(
        "gflops: 2 flops per multiply-add, depth-weighted; *_gmul: "
        "normalized layer cost in 1e9 multiplies per instance");
    const ComplexityProfile direct = direct_profile(3);
    double total = 0;
    for (const LayerEntry& e : suite.layers) {
      const LayerConfig& c = e.cfg;
      const ComplexityProfile dp = direct_profile(c.R);
      const double ld = layer_total_complexity(c, c.R == 3 ? direct : dp);
      std::string f2 = "-", f4 = "-", s2 = "-", s4 = "-";
      if (c.R == 3 && c.S == 3) {
        const double l2 = layer_total_complexity(c, winograd_profile(2, 3));
        const double l4 = layer_total_complexity(c, winograd_profile(4, 3));
        f2 = num(l2 / 1e9);
        f4 = num(l4 / 1e9);
        s2 = num(ld / l2);
        s4 = num(ld / l4);
      }
      const double gf = gflops_direct(c);
      total += gf;
      t.add_row({e.label, std::to_string(c.C), std::to_string(c.H),
                 std::to_string(c.W), std::to_string(c.K),
                 std::to_string(c.depth), num(gf), num(ld / 1e9), f2, f4, s2,
                 s4});
    }
    t.add_row({"total", "", "", "", "", "", num(total), "", "", "", "", ""});
    return t;
  }

  t.header = {"tile", "algorithm", "alpha_n", "beta_n", "gamma_n", "delta_n",
              "source"};
  std::vector<ComplexityProfile> rows;
  if (which == ComplexityTable::winograd)
    rows = winograd_table();
  else
    rows = fft_table(which == ComplexityTable::fft_fast);
  for (const ComplexityProfile& p : rows) {
    std::string name;
    if (p.method == Method::direct)
      name = "direct";
    else if (p.method == Method::winograd)
      name = "F(" + std::to_string(p.m) + "x" + std::to_string(p.m) + ",3x3)";
    else
      name = p.method == Method::fft_fast_cgemm ? "fft-fast-cgemm" : "fft";
    // FFT multiply costs are computed; only their transform costs are quoted.
    const bool quoted = p.reported && p.method == Method::winograd;
    t.add_row({std::to_string(p.alpha), name, num(p.alpha_n), num(p.beta_n),
               num(p.gamma_n), num(p.delta_n),
               quoted ? "reported"
               : p.reported ? "alpha computed; transforms reported"
                            : "computed"});
  }
  return t;
}

RunReport run_bench(const BenchOptions& opts, std::ostream* notices) {
  if (opts.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
  if (opts.batch == 0) throw std::invalid_argument("batch must be >= 1");
  const LayerSuite suite = resolve_suite(opts.suite);
  RunReport report{suite.name, opts.seed, {}, {}};
  const auto layers = select_layers(suite, opts.layers, false);
  using Clock = std::chrono::steady_clock;
  for (std::size_t idx = 0; idx < layers.size(); ++idx) {
    LayerConfig cfg = scale_layer(layers[idx].cfg, opts.scale, opts.scale_channels);
    cfg.N = opts.batch;
    LayerConfig one = cfg;
    one.depth = 1;
    const double gflops = gflops_direct(one);
    for (Algo a : opts.algos) {
      BenchRow row;
      row.layer = layers[idx].label;
      row.algo = to_string(a);
      row.batch = opts.batch;
      row.depth = cfg.depth;
      row.direct_gflops = gflops;
      try {
        const Tensor4f d = uniform_tensor<float>(
            cfg.input_shape(), layer_seed(opts.seed, idx, false));
        const Tensor4f g = uniform_tensor<float>(
            cfg.filter_shape(), layer_seed(opts.seed, idx, true));
        (void)run_algo(a, d, g, cfg, opts.fft_tile);  // warm-up
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t rep = 0; rep < opts.repeats; ++rep) {
          const auto t0 = Clock::now();
          const Tensor4f y = run_algo(a, d, g, cfg, opts.fft_tile);
          const auto t1 = Clock::now();
          best = std::min(
              best, std::chrono::duration<double, std::milli>(t1 - t0).count());
        }
        row.msec = best;
        row.effective_gflops = gflops / (best / 1e3);
      } catch (const std::bad_alloc&) {
        row.skipped = true;
        if (notices)
          *notices << "skipping layer " << row.layer << " (" << row.algo
                   << "): out of memory\n";
      }
      report.bench.push_back(row);
    }
  }
  return report;
}

GenResult run_gen(const GenOptions& opts) {
  if (opts.m == 0 || opts.r == 0)
    throw std::invalid_argument("gen: m and r must be >= 1");
  WinogradAlgorithm alg = opts.points
                              ? generate(opts.m, opts.r, parse_points(*opts.points))
                              : generate(opts.m, opts.r);
  const Rational mag = max_transform_magnitude(alg);
  const bool ok = verify_exact(alg, opts.trials, opts.seed);
  return {std::move(alg), mag, ok};
}

void write_gen(std::ostream& out, const GenResult& g) {
  const WinogradAlgorithm& a = g.algorithm;
  out << a.name() << "  alpha=" << a.alpha() << '\n';
  out << "BT (" << a.data_transform().rows() << "x" << a.data_transform().cols()
      << ")\n" << format_matrix(a.data_transform()) << '\n';
  out << "G (" << a.filter_transform().rows() << "x"
      << a.filter_transform().cols() << ")\n"
      << format_matrix(a.filter_transform()) << '\n';
  out << "AT (" << a.inverse_transform().rows() << "x"
      << a.inverse_transform().cols() << ")\n"
      << format_matrix(a.inverse_transform()) << '\n';
  out << "max |element|: " << fastconv::to_string(g.max_magnitude) << " ("
      << format_double(rational_to<double>(g.max_magnitude)) << ")\n";
  out << "multiplies 1D: " << minimal_multiplies_1d(a.m(), a.r())
      << "  2D: " << minimal_multiplies_2d(a.m(), a.m(), a.r(), a.r()) << '\n';
  out << "self-check: " << (g.verified ? "exact" : "FAILED") << '\n';
}

}  // namespace fastconv::bench
