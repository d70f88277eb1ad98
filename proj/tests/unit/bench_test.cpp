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
#include <sstream>

#include "fastconv/bench/commands.hpp"
#include "fastconv/complexity.hpp"
#include "fastconv/layer_engine.hpp"

namespace fastconv::bench {
namespace {

TEST(Suite, VggPreset) {
  const auto s = vgg_e_suite();
  ASSERT_EQ(s.layers.size(), 9u);
  const double want[] = {0.17, 3.70, 1.85, 3.70, 1.85, 11.10, 1.85, 11.10, 3.70};
  const std::size_t depth[] = {1, 1, 1, 1, 1, 3, 1, 3, 4};
  for (std::size_t j = 0; j < 9; ++j) {
    EXPECT_NEAR(gflops_direct(s.layers[j].cfg), want[j], 0.005) << s.layers[j].label;
    EXPECT_EQ(s.layers[j].cfg.depth, depth[j]);
    EXPECT_EQ(s.layers[j].cfg.pad, 1u);
    EXPECT_EQ(s.layers[j].cfg.output_shape().n2, s.layers[j].cfg.H);
  }
  EXPECT_NEAR(s.total_gflops(), 39.02, 0.01);
  EXPECT_THROW(s.find("9.9"), std::invalid_argument);
}

TEST(Suite, JsonLoading) {
  const auto s = parse_suite_json(R"({"name": "mini", "layers": [
      {"label": "a", "N": 2, "C": 3, "H": 8, "W": 9, "K": 4, "R": 3, "S": 3, "pad": 1},
      {"label": "b", "C": 1, "H": 5, "W": 5, "K": 1, "R": 5, "S": 5, "depth": 2}]})");
  EXPECT_EQ(s.name, "mini");
  ASSERT_EQ(s.layers.size(), 2u);
  EXPECT_EQ(s.layers[0].cfg, (LayerConfig{2, 3, 8, 9, 4, 3, 3, 1, 1}));
  EXPECT_EQ(s.layers[1].cfg, (LayerConfig{1, 1, 5, 5, 1, 5, 5, 0, 2}));
  EXPECT_THROW(parse_suite_json(R"([{"label": "x", "C": 1}])"), std::invalid_argument);
  EXPECT_THROW(parse_suite_json("{not json"), std::invalid_argument);
  EXPECT_THROW(parse_suite_json(R"([{"C":1,"H":2,"W":2,"K":1,"R":3,"S":3}])"),
               std::invalid_argument);
  EXPECT_THROW(resolve_suite("vgg-z"), std::invalid_argument);
}

TEST(Suite, ScaleKeepsChannels) {
  const auto c = scale_layer(vgg_e_suite().find("4.2").cfg, 0.25);
  EXPECT_EQ(c.H, 7u);
  EXPECT_EQ(c.C, 512u);
  EXPECT_EQ(c.K, 512u);
  const auto cc = scale_layer(vgg_e_suite().find("4.2").cfg, 0.25, true);
  EXPECT_EQ(cc.C, 128u);
  EXPECT_THROW(scale_layer(c, 0.0), std::invalid_argument);
  EXPECT_THROW(scale_layer(c, 1.5), std::invalid_argument);
}

TEST(Report, DoubleFormattingRoundTrips) {
  for (double x : {0.0, 1.0, 5.34e-05, 1.0 / 3.0, 123456.789, 4.9e-324, -2.5e300})
    EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_EQ(format_fixed(2.7777, 2), "2.78");
  EXPECT_THROW(parse_double("1.0x"), std::invalid_argument);
}

TEST(Report, AccuracyCsvRoundTrip) {
  RunReport r{"vgg-e", 7, {}, {}};
  r.accuracy.push_back({"1.2", "f2x2", "fp32", 1.3437950089567607e-05});
  r.accuracy.push_back({"5", "direct", "fp16", 0.1 + 0.2});
  std::ostringstream out;
  write_csv(out, accuracy_table(r));
  EXPECT_EQ(out.str().substr(0, 17), "# suite=vgg-e see");
  const auto rows = accuracy_rows_from(parse_csv(out.str()));
  ASSERT_EQ(rows.size(), 2u);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_EQ(rows[j].layer, r.accuracy[j].layer);
    EXPECT_EQ(rows[j].algo, r.accuracy[j].algo);
    EXPECT_EQ(rows[j].precision, r.accuracy[j].precision);
    EXPECT_EQ(rows[j].max_abs_err, r.accuracy[j].max_abs_err);
  }
}

TEST(Report, BenchCsvRoundTripAndTotals) {
  RunReport r{"vgg-e", 1, {}, {}};
  BenchRow a{"3.2", "f2x2", 1, 131.63182400000001, 0, 3, 3.7, false};
  a.effective_gflops = a.direct_gflops / (a.msec / 1e3);
  BenchRow b{"5", "f2x2", 1, 10.5, 0, 4, 0.925, false};
  b.effective_gflops = b.direct_gflops / (b.msec / 1e3);
  BenchRow skipped{"4.2", "f2x2", 1, 0, 0, 3, 3.7, true};
  r.bench = {a, skipped, b};
  const Table t = bench_table(r);
  std::ostringstream out;
  write_csv(out, t);
  const Table back = parse_csv(out.str());
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.notes, t.notes);
  const auto rows = bench_rows_from(back);
  ASSERT_EQ(rows.size(), 3u);  // two layers and the total
  EXPECT_EQ(rows[0].msec, a.msec);
  EXPECT_EQ(rows[0].effective_gflops, a.effective_gflops);
  EXPECT_EQ(rows[2].layer, "total");
  EXPECT_DOUBLE_EQ(rows[2].msec, 3 * a.msec + 4 * b.msec);
  EXPECT_DOUBLE_EQ(rows[2].effective_gflops,
                   (3 * 3.7 + 4 * 0.925) / ((3 * a.msec + 4 * b.msec) / 1e3));
  EXPECT_NE(out.str().find("skipped 4.2"), std::string::npos);
}

TEST(Report, TextIsAligned) {
  Table t;
  t.header = {"layer", "value"};
  t.add_row({"1.2", "3.70"});
  t.add_row({"total", "39.02"});
  std::ostringstream out;
  write_text(out, t);
  EXPECT_EQ(out.str(), "layer  value\n1.2     3.70\ntotal  39.02\n");
  EXPECT_THROW(t.add_row({"x"}), std::logic_error);
}

TEST(Commands, AlgoNames) {
  EXPECT_EQ(parse_algo("direct-fp32"), Algo::direct);
  EXPECT_EQ(parse_algo_list("f2x2,f4x4,fft-fast"),
            (std::vector{Algo::f2x2, Algo::f4x4, Algo::fft_fast}));
  EXPECT_THROW(parse_algo("f8x8"), std::invalid_argument);
  EXPECT_THROW(parse_algo_list(""), std::invalid_argument);
  for (Algo a : {Algo::direct, Algo::f2x2, Algo::f4x4, Algo::fft, Algo::fft_fast})
    EXPECT_EQ(parse_algo(to_string(a)), a);
}

TEST(Commands, AccuracyIsDeterministicAndNonZero) {
  AccuracyOptions o;
  o.scale = 0.1;
  o.scale_channels = true;
  o.algos = {Algo::direct, Algo::f2x2, Algo::f4x4, Algo::fft};
  const auto a = run_accuracy(o);
  const auto b = run_accuracy(o);
  ASSERT_EQ(a.accuracy.size(), 5u * 4);
  for (std::size_t j = 0; j < a.accuracy.size(); ++j)
    EXPECT_EQ(a.accuracy[j].max_abs_err, b.accuracy[j].max_abs_err);
  EXPECT_TRUE(zero_error_rows(a).empty());
  o.seed = 2;
  EXPECT_NE(run_accuracy(o).accuracy[0].max_abs_err, a.accuracy[0].max_abs_err);
}

TEST(Commands, ZeroFilterSmokeRunIsExact) {
  AccuracyOptions o;
  o.scale = 0.1;
  o.scale_channels = true;
  o.zero_filters = true;
  o.algos = {Algo::direct, Algo::f2x2, Algo::f4x4, Algo::fft};
  const auto r = run_accuracy(o);
  for (const auto& row : r.accuracy) EXPECT_EQ(row.max_abs_err, 0.0);
  EXPECT_EQ(zero_error_rows(r).size(), r.accuracy.size());
}

TEST(Commands, ComplexityTables) {
  const auto vgg = vgg_e_suite();
  const auto w = complexity_table(ComplexityTable::winograd, vgg, Format::text);
  ASSERT_EQ(w.rows.size(), 5u);
  EXPECT_EQ(w.rows[3], (std::vector<std::string>{"6", "F(4x4,3x3)", "2.25", "4.33",
                                                 "2.00", "2.78", "computed"}));
  const auto f = complexity_table(ComplexityTable::fft_fast, vgg, Format::text);
  EXPECT_EQ(std::vector<std::string>(f.rows[1].begin() + 2, f.rows[1].begin() + 6),
            (std::vector<std::string>{"2.20", "6.23", "6.82", "6.82"}));
  const auto l = complexity_table(ComplexityTable::layer_costs, vgg, Format::text);
  EXPECT_EQ(l.rows.back()[0], "total");
  EXPECT_EQ(l.rows.back()[6], "39.02");
  EXPECT_EQ(l.rows[1][6], "3.70");
  const auto csv = complexity_table(ComplexityTable::winograd, vgg, Format::csv);
  EXPECT_EQ(parse_double(csv.rows[3][3]), 156.0 / 36.0);
}

TEST(Commands, BenchUsesDirectFlops) {
  BenchOptions o;
  o.scale = 0.05;
  o.scale_channels = true;
  o.repeats = 2;
  o.layers = {"1.2", "5"};
  for (std::size_t batch : {1u, 4u}) {
    o.batch = batch;
    const auto r = run_bench(o);
    ASSERT_EQ(r.bench.size(), 2u * 3);
    for (const auto& row : r.bench) {
      EXPECT_FALSE(row.skipped);
      EXPECT_EQ(row.batch, batch);
      EXPECT_GT(row.msec, 0.0);
      LayerConfig cfg = scale_layer(vgg_e_suite().find(row.layer).cfg, 0.05, true);
      cfg.N = batch;
      cfg.depth = 1;
      EXPECT_DOUBLE_EQ(row.effective_gflops, gflops_direct(cfg) / (row.msec / 1e3));
    }
  }
  o.repeats = 0;
  EXPECT_THROW(run_bench(o), std::invalid_argument);
}

TEST(Commands, F2MultiplyRatio) {
  LayerConfig cfg{1, 8, 28, 28, 8, 3, 3, 1, 1};
  OpCounter direct, f2;
  const auto d = uniform_tensor<float>(cfg.input_shape(), 1);
  const auto g = uniform_tensor<float>(cfg.filter_shape(), 2);
  direct_forward<float, float>(d, g, cfg, &direct);
  winograd_forward(d, g, cfg, builtin_algorithm(2, 3), &f2);
  EXPECT_EQ(direct.real_multiplies * 4, f2.real_multiplies * 9);
}

TEST(Commands, GenSelfVerifies) {
  GenOptions o;
  o.m = 4;
  o.r = 3;
  const auto g43 = run_gen(o);
  EXPECT_TRUE(g43.verified);
  EXPECT_EQ(g43.algorithm.alpha(), 6u);
  std::ostringstream out;
  write_gen(out, g43);
  EXPECT_NE(out.str().find("2D: 36"), std::string::npos);
  EXPECT_NE(out.str().find("self-check: exact"), std::string::npos);
  o.m = 6;
  const auto g63 = run_gen(o);
  EXPECT_TRUE(g63.verified);
  EXPECT_GT(g63.max_magnitude, g43.max_magnitude);
  o.points = "0,1,1,2,-2,3,4";
  EXPECT_THROW(run_gen(o), std::invalid_argument);
}

}  // namespace
}  // namespace fastconv::bench
