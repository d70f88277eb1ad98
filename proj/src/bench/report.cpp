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

#include "fastconv/bench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace fastconv::bench {

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return x;
}

std::string format_fixed(double x, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x,
                                 std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::logic_error("Table: row width does not match header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& t) {
  for (const auto& n : t.notes) out << "# " << n << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (cells[j].find_first_of(",\"\n") != std::string::npos)
        throw std::invalid_argument("CSV cell needs quoting: " + cells[j]);
      out << (j ? "," : "") << cells[j];
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_text(std::ostream& out, const Table& t) {
  for (const auto& n : t.notes) out << n << '\n';
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t j = 0; j < width.size(); ++j) {
    width[j] = t.header[j].size();
    for (const auto& r : t.rows) width[j] = std::max(width[j], r[j].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j) out << "  ";
      // First column left-aligned, numbers right-aligned.
      const std::string pad(width[j] - cells[j].size(), ' ');
      out << (j == 0 ? cells[j] + pad : pad + cells[j]);
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_table(std::ostream& out, const Table& t, Format f) {
  if (f == Format::csv)
    write_csv(out, t);
  else
    write_text(out, t);
}

Table parse_csv(std::string_view text) {
  Table t;
  bool have_header = false;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      t.notes.emplace_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != t.header.size())
        throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                    " cells, header has " +
                                    std::to_string(t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw std::invalid_argument("CSV: no header");
  return t;
}

namespace {

void expect_header(const Table& t, const std::vector<std::string>& want) {
  if (t.header != want)
    throw std::invalid_argument("CSV: unexpected header");
}

std::size_t parse_count(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a count: '" + std::string(s) + "'");
  return v;
}

const std::vector<std::string> kAccuracyHeader{"layer", "algo", "precision",
                                               "max_abs_err"};
const std::vector<std::string> kBenchHeader{"layer", "algo", "batch", "msec",
                                            "effective_gflops"};

}  // namespace

Table accuracy_table(const RunReport& r) {
  Table t;
  t.header = kAccuracyHeader;
  t.notes.push_back("suite=" + r.suite + " seed=" + std::to_string(r.seed));
  for (const AccuracyRow& a : r.accuracy)
    t.add_row({a.layer, a.algo, a.precision, format_double(a.max_abs_err)});
  return t;
}

std::vector<AccuracyRow> accuracy_rows_from(const Table& t) {
  expect_header(t, kAccuracyHeader);
  std::vector<AccuracyRow> rows;
  for (const auto& c : t.rows) rows.push_back({c[0], c[1], c[2], parse_double(c[3])});
  return rows;
}

Table bench_table(const RunReport& r) {
  Table t;
  t.header = kBenchHeader;
  t.notes.push_back("suite=" + r.suite + " seed=" + std::to_string(r.seed));
  t.notes.push_back(
      "effective_gflops = direct-convolution GFLOPs / measured seconds");
  struct Totals {
    double gflops = 0;
    double msec = 0;
    std::size_t batch = 0;
  };
  std::map<std::string, Totals> totals;
  std::vector<std::string> order;
  for (const BenchRow& b : r.bench) {
    if (b.skipped) {
      t.notes.push_back("skipped " + b.layer + " " + b.algo +
                        ": out of memory");
      continue;
    }
    t.add_row({b.layer, b.algo, std::to_string(b.batch), format_double(b.msec),
               format_double(b.effective_gflops)});
    if (!totals.count(b.algo)) order.push_back(b.algo);
    Totals& tot = totals[b.algo];
    tot.gflops += b.direct_gflops * static_cast<double>(b.depth);
    tot.msec += b.msec * static_cast<double>(b.depth);
    tot.batch = b.batch;
  }
  for (const std::string& algo : order) {
    const Totals& tot = totals[algo];
    t.add_row({"total", algo, std::to_string(tot.batch), format_double(tot.msec),
               format_double(tot.msec > 0 ? tot.gflops / (tot.msec / 1e3) : 0)});
  }
  return t;
}

std::vector<BenchRow> bench_rows_from(const Table& t) {
  expect_header(t, kBenchHeader);
  std::vector<BenchRow> rows;
  for (const auto& c : t.rows) {
    BenchRow b;
    b.layer = c[0];
    b.algo = c[1];
    b.batch = parse_count(c[2]);
    b.msec = parse_double(c[3]);
    b.effective_gflops = parse_double(c[4]);
    rows.push_back(b);
  }
  return rows;
}

}  // namespace fastconv::bench
