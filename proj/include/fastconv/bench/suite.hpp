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

#ifndef FASTCONV_BENCH_SUITE_HPP_
#define FASTCONV_BENCH_SUITE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "fastconv/reference_conv.hpp"

namespace fastconv::bench {

struct LayerEntry {
  std::string label;
  LayerConfig cfg;
};

struct LayerSuite {
  std::string name;
  std::vector<LayerEntry> layers;

  const LayerEntry& find(std::string_view label) const;
  // Direct-convolution GFLOPs (2 flops per multiply-add) weighted by depth.
  double total_gflops() const;
};

// The 3x3 convolution layers of VGG network E, N = 1, pad = 1.
LayerSuite vgg_e_suite();

// Layers reported in the accuracy table: 1.2, 2.2, 3.2, 4.2, 5.
std::vector<std::string> vgg_e_accuracy_layers();

// JSON: either an array of layers or {"name": ..., "layers": [...]}; each
// layer has label, N, C, H, W, K, R, S and optional pad (0), depth (1).
LayerSuite parse_suite_json(std::string_view text, std::string name = "custom");
LayerSuite load_suite_file(const std::string& path);

// "vgg-e" or a path to a JSON file.
LayerSuite resolve_suite(const std::string& name_or_path);

// Shrinks H and W by `scale` (rounded, at least 1 and large enough for the
// filter after padding); C and K too when `channels` is set.
LayerConfig scale_layer(const LayerConfig& cfg, double scale,
                        bool channels = false);

}  // namespace fastconv::bench

#endif  // FASTCONV_BENCH_SUITE_HPP_
