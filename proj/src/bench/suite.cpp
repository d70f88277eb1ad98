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

#include "fastconv/bench/suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fastconv::bench {

const LayerEntry& LayerSuite::find(std::string_view label) const {
  for (const LayerEntry& e : layers)
    if (e.label == label) return e;
  throw std::invalid_argument("suite " + name + " has no layer '" +
                              std::string(label) + "'");
}

double LayerSuite::total_gflops() const {
  double total = 0;
  for (const LayerEntry& e : layers) total += gflops_direct(e.cfg);
  return total;
}

LayerSuite vgg_e_suite() {
  struct Row {
    const char* label;
    std::size_t C, HW, K, depth;
  };
  static constexpr Row kRows[] = {
      {"1.1", 3, 224, 64, 1},    {"1.2", 64, 224, 64, 1},
      {"2.1", 64, 112, 128, 1},  {"2.2", 128, 112, 128, 1},
      {"3.1", 128, 56, 256, 1},  {"3.2", 256, 56, 256, 3},
      {"4.1", 256, 28, 512, 1},  {"4.2", 512, 28, 512, 3},
      {"5", 512, 14, 512, 4},
  };
  LayerSuite suite{"vgg-e", {}};
  for (const Row& r : kRows) {
    LayerConfig cfg;
    cfg.N = 1;
    cfg.C = r.C;
    cfg.H = cfg.W = r.HW;
    cfg.K = r.K;
    cfg.R = cfg.S = 3;
    cfg.pad = 1;
    cfg.depth = r.depth;
    suite.layers.push_back({r.label, cfg});
  }
  return suite;
}

std::vector<std::string> vgg_e_accuracy_layers() {
  return {"1.2", "2.2", "3.2", "4.2", "5"};
}

namespace {

std::size_t get_count(const nlohmann::json& j, const char* key,
                      std::optional<std::size_t> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("suite layer missing field '") +
                                key + "'");
  }
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw std::invalid_argument(std::string("suite field '") + key +
                                "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

LayerSuite parse_suite_json(std::string_view text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("suite JSON: ") + e.what());
  }
  const nlohmann::json* layers = &doc;
  if (doc.is_object()) {
    if (doc.contains("name")) name = doc.at("name").get<std::string>();
    if (!doc.contains("layers"))
      throw std::invalid_argument("suite JSON: object needs a 'layers' array");
    layers = &doc.at("layers");
  }
  if (!layers->is_array())
    throw std::invalid_argument("suite JSON: layers must be an array");

  LayerSuite suite{std::move(name), {}};
  for (const auto& j : *layers) {
    LayerEntry e;
    e.label = j.contains("label") ? j.at("label").get<std::string>()
                                  : std::to_string(suite.layers.size() + 1);
    e.cfg.N = get_count(j, "N", 1);
    e.cfg.C = get_count(j, "C");
    e.cfg.H = get_count(j, "H");
    e.cfg.W = get_count(j, "W");
    e.cfg.K = get_count(j, "K");
    e.cfg.R = get_count(j, "R");
    e.cfg.S = get_count(j, "S");
    e.cfg.pad = get_count(j, "pad", 0);
    e.cfg.depth = get_count(j, "depth", 1);
    e.cfg.validate();
    suite.layers.push_back(std::move(e));
  }
  if (suite.layers.empty())
    throw std::invalid_argument("suite JSON: no layers");
  return suite;
}

LayerSuite load_suite_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open suite file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  return parse_suite_json(text.str(), stem.substr(0, stem.rfind('.')));
}

LayerSuite resolve_suite(const std::string& name_or_path) {
  if (name_or_path == "vgg-e") return vgg_e_suite();
  if (name_or_path.find('.') == std::string::npos &&
      name_or_path.find('/') == std::string::npos)
    throw std::invalid_argument("unknown suite '" + name_or_path + "'");
  return load_suite_file(name_or_path);
}

LayerConfig scale_layer(const LayerConfig& cfg, double scale, bool channels) {
  if (!(scale > 0.0 && scale <= 1.0))
    throw std::invalid_argument("scale must be in (0, 1]");
  auto shrink = [scale](std::size_t n, std::size_t floor) {
    const auto s = static_cast<std::size_t>(std::lround(static_cast<double>(n) * scale));
    return std::max({s, floor, std::size_t{1}});
  };
  LayerConfig out = cfg;
  const std::size_t min_h = cfg.R > 2 * cfg.pad ? cfg.R - 2 * cfg.pad : 1;
  const std::size_t min_w = cfg.S > 2 * cfg.pad ? cfg.S - 2 * cfg.pad : 1;
  out.H = shrink(cfg.H, min_h);
  out.W = shrink(cfg.W, min_w);
  if (channels) {
    out.C = shrink(cfg.C, 1);
    out.K = shrink(cfg.K, 1);
  }
  return out;
}

}  // namespace fastconv::bench
