// Copyright 2026 The ccplan Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Declarative CNN layer graphs and exact weight/MAC/activation accounting.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ccplan {

enum class LayerKind { kConv, kPool, kUpsample };

struct FilterSize {
  int height = 3;
  int width = 3;
  friend bool operator==(const FilterSize&, const FilterSize&) = default;
};

struct LayerSpec {
  LayerKind kind = LayerKind::kConv;
  int out_maps = 0;   // conv only
  FilterSize filter;  // conv only
  bool scalable = true;
  std::optional<int> skip_from;  // concatenated onto this conv's input
  int in_maps = 0;               // derived by resolve_arch

  static LayerSpec conv(int out_maps, int filter = 3, std::optional<int> skip_from = std::nullopt);
  static LayerSpec classifier(int classes);
  static LayerSpec pool();
  static LayerSpec upsample();

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct InputSize {
  int height = 0;
  int width = 0;
  friend bool operator==(const InputSize&, const InputSize&) = default;
};

struct ArchSpec {
  std::string name;
  int input_channels = 1;
  int num_classes = 2;
  InputSize input_size{512, 512};
  std::vector<LayerSpec> layers;

  friend bool operator==(const ArchSpec&, const ArchSpec&) = default;
};

/// Validates the graph and fills every layer's in_maps. Throws kValidation for
/// dangling or forward skips, non-positive widths, spatial mismatches at a
/// skip, or a missing terminal classifier.
ArchSpec resolve_arch(ArchSpec arch);

ArchSpec arch_from_json(const nlohmann::json& j);
nlohmann::json arch_to_json(const ArchSpec& arch);
ArchSpec parse_arch(const std::filesystem::path& path);

/// Built-in presets: "unet", "fcn", "cumedvision". Throws kLookup otherwise.
ArchSpec preset(std::string_view name);
std::vector<std::string> preset_names();

struct AccountingOptions {
  bool include_bias = false;
  bool include_batchnorm = false;
  int bytes_per_activation = 4;
};

struct ParamAccount {
  std::uint64_t theta = 0;
  double log10_theta = 0.0;
  std::vector<std::pair<int, std::uint64_t>> per_layer;  // conv layers only
  std::uint64_t macs = 0;
  std::uint64_t activation_bytes = 0;
};

ParamAccount param_count(const ArchSpec& arch, const AccountingOptions& options = {});

enum class Rounding { kCeil, kFloor, kNearest };

std::string_view to_string(Rounding r);
Rounding parse_rounding(std::string_view text);

/// Multiplies every scalable conv width by alpha (rounded, clamped to >= 1).
/// Throws kDomain unless alpha is in (0, 1].
ArchSpec scale_arch(const ArchSpec& arch, double alpha, Rounding rounding = Rounding::kCeil);

struct ReductionRatios {
  double pr = 1.0;
  double lr_proxy = 1.0;
};

ReductionRatios reduction_ratios(const ParamAccount& base, const ParamAccount& compressed);

}  // namespace ccplan
