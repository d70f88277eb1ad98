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

// Acceptance run: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fastconv/bench/commands.hpp"
#include "fastconv/complexity.hpp"
#include "fastconv/fft_reference.hpp"
#include "fastconv/generator.hpp"
#include "fastconv/layer_engine.hpp"
#include "test_support.hpp"

namespace {

using namespace fastconv;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool near2(double got, double want) { return std::fabs(got - want) < 0.005 + 1e-12; }

Outcome exactness() {
  Outcome o;
  const std::size_t trials = 100;
  std::size_t checked = 0;
  for (auto [m, r] : {std::pair{2, 3}, {3, 2}, {4, 3}}) {
    o.check(verify_exact(builtin_algorithm(m, r), trials, 100 + m),
            "builtin F(" + std::to_string(m) + "," + std::to_string(r) + ")");
    ++checked;
  }
  for (std::size_t alpha = 1; alpha <= 8; ++alpha)
    for (std::size_t r = 1; r <= alpha; ++r) {
      const std::size_t m = alpha - r + 1;
      o.check(verify_exact(generate(m, r), trials, 7 * alpha + r),
              "generated F(" + std::to_string(m) + "," + std::to_string(r) + ")");
      ++checked;
    }
  if (o.ok) o.detail = std::to_string(checked) + " algorithms x 100 cases exact";
  return o;
}

Outcome complexity_tables() {
  Outcome o;
  const auto w4 = winograd_profile(2, 3);
  const auto w6 = winograd_profile(4, 3);
  auto row = [&](const ComplexityProfile& p, double a, double b, double g, double d,
                 const std::string& name) {
    o.check(near2(p.alpha_n, a) && near2(p.beta_n, b) && near2(p.gamma_n, g) &&
                near2(p.delta_n, d),
            name + " row " + fmt("%.4f", p.alpha_n) + "/" + fmt("%.4f", p.beta_n) + "/" +
                fmt("%.4f", p.gamma_n) + "/" + fmt("%.4f", p.delta_n));
  };
  row(w4, 4.00, 2.00, 1.75, 1.50, "tile 4");
  row(w6, 2.25, 4.33, 2.00, 2.78, "tile 6");
  const std::map<std::size_t, std::pair<double, double>> alpha_col{
      {8, {4.44, 3.33}},  {16, {2.94, 2.20}},  {32, {2.42, 1.81}},
      {64, {2.20, 1.65}}, {128, {2.10, 1.57}}, {256, {2.05, 1.54}}};
  for (const auto& [tile, want] : alpha_col) {
    const double d = fft_multiply_complexity(tile, 3, false);
    const double f = fft_multiply_complexity(tile, 3, true);
    o.check(near2(d, want.first), "fft tile " + std::to_string(tile) + " " + fmt("%.4f", d));
    o.check(near2(f, want.second),
            "fast fft tile " + std::to_string(tile) + " " + fmt("%.4f", f));
  }
  if (o.ok) o.detail = "tiles 4, 6 and FFT tiles 8..256 match to 2 decimals";
  return o;
}

Outcome layer_table() {
  Outcome o;
  const auto suite = bench::vgg_e_suite();
  const std::map<std::string, double> want{{"1.1", 0.17}, {"1.2", 3.70}, {"2.1", 1.85},
                                           {"2.2", 3.70}, {"3.1", 1.85}, {"3.2", 11.10},
                                           {"4.1", 1.85}, {"4.2", 11.10}, {"5", 3.70}};
  for (const auto& [label, g] : want) {
    const double got = gflops_direct(suite.find(label).cfg);
    o.check(near2(got, g), "layer " + label + " " + fmt("%.4f", got));
  }
  const double total = suite.total_gflops();
  o.check(std::fabs(total - 39.02) <= 0.01, "total " + fmt("%.4f", total));
  if (o.ok) o.detail = "9 layers, total " + fmt("%.3f", total);
  return o;
}

Outcome accuracy() {
  Outcome o;
  bench::AccuracyOptions opts;
  opts.scale = 0.25;  // 224 -> 56, full channel counts
  std::map<std::string, std::map<std::string, double>> fp32, fp16;
  for (const auto& row : bench::run_accuracy(opts).accuracy)
    fp32[row.layer][row.algo] = row.max_abs_err;
  opts.precision = Precision::fp16_sim;
  for (const auto& row : bench::run_accuracy(opts).accuracy)
    fp16[row.layer][row.algo] = row.max_abs_err;

  std::ostringstream summary;
  for (const auto& [layer, e] : fp32) {
    const double d = e.at("direct"), f2 = e.at("f2x2"), f4 = e.at("f4x4");
    o.check(f2 <= d, "layer " + layer + " F2 " + fmt("%.3g", f2) + " > direct " +
                         fmt("%.3g", d));
    o.check(f4 >= 1e-5 && f4 <= 1e-2, "layer " + layer + " F4 " + fmt("%.3g", f4));
    o.check(d >= 1e-6 && d <= 1e-3, "layer " + layer + " direct " + fmt("%.3g", d));
    const auto& h = fp16.at(layer);
    double lo = 1e300, hi = 0;
    for (const auto& [algo, err] : h) {
      lo = std::min(lo, err);
      hi = std::max(hi, err);
    }
    o.check(hi <= 4 * lo, "layer " + layer + " fp16 spread " + fmt("%.3g", hi / lo));
    o.check(lo >= 1e-3 && hi <= 1e-1,
            "layer " + layer + " fp16 range " + fmt("%.3g", lo) + ".." + fmt("%.3g", hi));
    summary << layer << ":" << fmt("%.1e", f2) << "/" << fmt("%.1e", d) << "/"
            << fmt("%.1e", f4) << " ";
  }
  if (o.ok) o.detail = "fp32 F2/direct/F4 " + summary.str();
  return o;
}

Outcome layer_oracles() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const auto f2 = builtin_algorithm(2, 3), f4 = builtin_algorithm(4, 3);
  double w2 = 0, w4 = 0, wf = 0;
  std::size_t indivisible = 0;
  for (int t = 0; t < 200; ++t) {
    const LayerConfig cfg = testing::random_config(rng, {});
    if (cfg.out_h() % 4 || cfg.out_w() % 4) ++indivisible;
    const auto d = uniform_tensor<float>(cfg.input_shape(), 1000 + t);
    const auto g = uniform_tensor<float>(cfg.filter_shape(), 5000 + t);
    const auto truth =
        direct_forward<double, double>(tensor_cast<double>(d), tensor_cast<double>(g), cfg);
    w2 = std::max(w2, max_abs_error(winograd_forward(d, g, cfg, f2), truth));
    w4 = std::max(w4, max_abs_error(winograd_forward(d, g, cfg, f4), truth));
    wf = std::max(wf, max_abs_error(fft_forward_layer(d, g, cfg, 16), truth));
  }
  o.check(w2 < 5e-4, "F2 " + fmt("%.3g", w2));
  o.check(w4 < 5e-3, "F4 " + fmt("%.3g", w4));
  o.check(wf < 1e-3, "fft " + fmt("%.3g", wf));
  o.check(indivisible > 0, "no indivisible shapes drawn");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst F2 ") + fmt("%.2e", w2) +
              " F4 " + fmt("%.2e", w4) + " fft " + fmt("%.2e", wf);
  return o;
}

Outcome gradients() {
  Outcome o;
  std::mt19937_64 rng(77);
  const auto f2 = builtin_algorithm(2, 3), f32 = builtin_algorithm(3, 2);
  double adj = 0, gi32 = 0, gw32 = 0, gi64 = 0, gw64 = 0;
  for (int t = 0; t < 50; ++t) {
    const LayerConfig cfg = testing::random_config(rng, {});
    const auto d = uniform_tensor<double>(cfg.input_shape(), 300 + t);
    const auto g = uniform_tensor<double>(cfg.filter_shape(), 400 + t);
    const auto dy = uniform_tensor<double>(cfg.output_shape(), 500 + t);

    const double fwd = dot(direct_forward<double, double>(d, g, cfg), dy);
    const double in = dot(d, direct_grad_inputs(dy, g, cfg));
    const double wt = dot(g, direct_grad_weights(d, dy, cfg));
    const double scale = std::max(std::fabs(fwd), 1e-300);
    adj = std::max({adj, std::fabs(fwd - in) / scale, std::fabs(fwd - wt) / scale});

    const auto gi_ref = direct_grad_inputs(dy, g, cfg);
    const auto gw_ref = direct_grad_weights(d, dy, cfg);
    gi64 = std::max(gi64, testing::relative_max_error(winograd_grad_inputs(dy, g, cfg, f2),
                                                      gi_ref));
    gw64 = std::max(gw64, testing::relative_max_error(winograd_grad_weights(d, dy, cfg, f32),
                                                      gw_ref));
    const auto df = tensor_cast<float>(d), gf = tensor_cast<float>(g),
               dyf = tensor_cast<float>(dy);
    gi32 = std::max(gi32, testing::relative_max_error(winograd_grad_inputs(dyf, gf, cfg, f2),
                                                      gi_ref));
    gw32 = std::max(gw32, testing::relative_max_error(
                              winograd_grad_weights(df, dyf, cfg, f32), gw_ref));
  }
  o.check(adj < 1e-8, "adjoint " + fmt("%.3g", adj));
  o.check(gi32 < 1e-3, "grad inputs fp32 " + fmt("%.3g", gi32));
  o.check(gw32 < 1e-3, "grad weights fp32 " + fmt("%.3g", gw32));
  o.check(gi64 < 1e-10, "grad inputs fp64 " + fmt("%.3g", gi64));
  o.check(gw64 < 1e-10, "grad weights fp64 " + fmt("%.3g", gw64));
  if (o.ok)
    o.detail = "adjoint " + fmt("%.1e", adj) + ", fp32 " + fmt("%.1e", std::max(gi32, gw32)) +
               ", fp64 " + fmt("%.1e", std::max(gi64, gw64));
  return o;
}

struct Counted {
  double v = 0;
  static inline int multiplies = 0;
  friend Counted operator+(Counted a, Counted b) { return {a.v + b.v}; }
  friend Counted operator-(Counted a, Counted b) { return {a.v - b.v}; }
  friend Counted operator*(Counted a, Counted b) {
    ++multiplies;
    return {a.v * b.v};
  }
};

Outcome multiply_accounting() {
  Outcome o;
  const LayerConfig cfg{2, 5, 24, 24, 6, 3, 3, 1, 1};  // 24 divisible by 2, 4, 6
  const auto d = uniform_tensor<float>(cfg.input_shape(), 31);
  const auto g = uniform_tensor<float>(cfg.filter_shape(), 32);
  OpCounter direct, c2, c4;
  direct_forward<float, float>(d, g, cfg, &direct);
  winograd_forward(d, g, cfg, builtin_algorithm(2, 3), &c2);
  winograd_forward(d, g, cfg, builtin_algorithm(4, 3), &c4);
  const std::uint64_t n = cfg.N, hw = cfg.out_h() * cfg.out_w(), ck = cfg.C * cfg.K;
  o.check(c2.real_multiplies == n * hw / 4 * ck * 16 &&
              c2.real_multiplies == multiply_stage_flops(cfg, 2),
          "(a) F2 stage count");
  o.check(c4.real_multiplies == n * hw / 16 * ck * 36 &&
              c4.real_multiplies == multiply_stage_flops(cfg, 4),
          "(a) F4 stage count");
  o.check(direct.real_multiplies * 4 == c2.real_multiplies * 9, "(b) direct/F2 != 2.25");
  o.check(direct.real_multiplies == c4.real_multiplies * 4, "(b) direct/F4 != 4");

  Counted::multiplies = 0;
  const auto [re, im] = complex_mul_3(Counted{1.5}, Counted{-2}, Counted{0.25}, Counted{3});
  o.check(Counted::multiplies == 3, "(c) complex_mul_3 used " +
                                        std::to_string(Counted::multiplies) + " multiplies");
  o.check(re.v == 1.5 * 0.25 + 2 * 3 && im.v == 1.5 * 3 - 2 * 0.25, "(c) product value");

  for (std::size_t tile : {8u, 16u}) {
    const std::size_t m = tile - 2;
    const LayerConfig fc{1, 3, 2 * m, 3 * m, 4, 3, 3, 1, 1};
    const auto fd = uniform_tensor<float>(fc.input_shape(), 33);
    const auto fg = uniform_tensor<float>(fc.filter_shape(), 34);
    OpCounter c;
    fft_forward_layer(fd, fg, fc, tile, {}, &c);
    const std::uint64_t pairs = 6u * fc.C * fc.K;
    o.check(c.complex_multiplies == tile * (tile / 2 + 1) * pairs,
            "(d) tile " + std::to_string(tile) + " products");
  }
  if (o.ok) o.detail = "(a)-(d) exact";
  return o;
}

Outcome bench_smoke() {
  Outcome o;
  bench::BenchOptions opts;
  opts.scale = 0.1;
  opts.scale_channels = true;
  opts.repeats = 1;
  opts.layers = {"3.1", "5"};
  const auto report = bench::run_bench(opts);
  const auto suite = bench::vgg_e_suite();
  for (const auto& row : report.bench) {
    LayerConfig cfg = bench::scale_layer(suite.find(row.layer).cfg, 0.1, true);
    cfg.depth = 1;
    const double want = gflops_direct(cfg) / (row.msec / 1e3);
    o.check(!row.skipped && row.msec > 0 && row.effective_gflops == want,
            "row " + row.layer + "/" + row.algo);
  }
  o.check(report.bench.size() == 6, "row count");
  if (o.ok)
    o.detail = "effective GFLOPS = direct GFLOPs / seconds on " +
               std::to_string(report.bench.size()) + " rows; throughput itself not compared";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"transform exactness", exactness},
      {"normalized complexity tables", complexity_tables},
      {"layer GFLOPs table", layer_table},
      {"accuracy properties", accuracy},
      {"layer oracle equivalence", layer_oracles},
      {"gradients", gradients},
      {"multiply accounting", multiply_accounting},
      {"bench smoke", bench_smoke},
  };
  int failed = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    const auto start = Clock::now();
    Outcome out;
    try {
      out = criteria[j].second();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%.1fs) %s\n", out.ok ? "PASS" : "FAIL", j + 1,
                criteria[j].first.c_str(), sec, out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  return failed ? 1 : 0;
}
