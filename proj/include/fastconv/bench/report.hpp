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

#ifndef FASTCONV_BENCH_REPORT_HPP_
#define FASTCONV_BENCH_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fastconv::bench {

enum class Format { csv, text };

Format parse_format(std::string_view name);

// Shortest decimal that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

// Fixed-point with `digits` decimals, for aligned text tables.
std::string format_fixed(double x, int digits);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // Comment lines printed before the table ("# ..." in CSV).
  std::vector<std::string> notes;

  void add_row(std::vector<std::string> row);
};

void write_csv(std::ostream& out, const Table& t);
void write_text(std::ostream& out, const Table& t);
void write_table(std::ostream& out, const Table& t, Format f);

// Parses CSV as written by write_csv; "#" lines become notes.
Table parse_csv(std::string_view text);

struct AccuracyRow {
  std::string layer;
  std::string algo;
  std::string precision;
  double max_abs_err = 0;
};

struct BenchRow {
  std::string layer;
  std::string algo;
  std::size_t batch = 0;
  double msec = 0;
  double effective_gflops = 0;
  std::size_t depth = 1;
  double direct_gflops = 0;
  bool skipped = false;
};

struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<AccuracyRow> accuracy;
  std::vector<BenchRow> bench;
};

// layer,algo,precision,max_abs_err
Table accuracy_table(const RunReport& r);
std::vector<AccuracyRow> accuracy_rows_from(const Table& t);

// layer,algo,batch,msec,effective_gflops plus one "total" row per algorithm
// weighted by depth. Skipped layers are listed in the notes.
Table bench_table(const RunReport& r);
std::vector<BenchRow> bench_rows_from(const Table& t);

}  // namespace fastconv::bench

#endif  // FASTCONV_BENCH_REPORT_HPP_
