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

#include "ccplan/arch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ccplan/error.hpp"

namespace ccplan {

namespace fs = std::filesystem;

LayerSpec LayerSpec::conv(int out_maps, int filter, std::optional<int> skip_from) {
  LayerSpec l;
  l.kind = LayerKind::kConv;
  l.out_maps = out_maps;
  l.filter = {filter, filter};
  l.scalable = true;
  l.skip_from = skip_from;
  return l;
}

LayerSpec LayerSpec::classifier(int classes) {
  LayerSpec l = conv(classes, 1);
  l.scalable = false;
  return l;
}

LayerSpec LayerSpec::pool() {
  LayerSpec l;
  l.kind = LayerKind::kPool;
  l.filter = {0, 0};
  l.scalable = false;
  return l;
}

LayerSpec LayerSpec::upsample() {
  LayerSpec l;
  l.kind = LayerKind::kUpsample;
  l.filter = {0, 0};
  l.scalable = false;
  return l;
}

namespace {

struct Shape {
  int height = 0;
  int width = 0;
  int maps = 0;
};

std::string layer_label(const ArchSpec& arch, std::size_t i) {
  return arch.name + ": layer " + std::to_string(i);
}

// Output shape of every layer; assumes a resolved spec.
std::vector<Shape> output_shapes(const ArchSpec& arch) {
  std::vector<Shape> shapes;
  shapes.reserve(arch.layers.size());
  Shape cur{arch.input_size.height, arch.input_size.width, arch.input_channels};
  for (const auto& layer : arch.layers) {
    switch (layer.kind) {
      case LayerKind::kConv: cur.maps = layer.out_maps; break;
      case LayerKind::kPool:
        cur.height /= 2;
        cur.width /= 2;
        break;
      case LayerKind::kUpsample:
        cur.height *= 2;
        cur.width *= 2;
        break;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

}  // namespace

ArchSpec resolve_arch(ArchSpec arch) {
  auto invalid = [](const std::string& msg) { fail(ErrorKind::kValidation, msg); };
  if (arch.input_channels < 1) invalid(arch.name + ": input_channels must be >= 1");
  if (arch.num_classes < 1) invalid(arch.name + ": num_classes must be >= 1");
  if (arch.input_size.height < 1 || arch.input_size.width < 1) invalid(arch.name + ": input_size must be positive");
  if (arch.layers.empty()) invalid(arch.name + ": no layers");

  std::vector<Shape> shapes;
  Shape cur{arch.input_size.height, arch.input_size.width, arch.input_channels};
  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    LayerSpec& layer = arch.layers[i];
    if (layer.kind == LayerKind::kConv) {
      if (layer.out_maps < 1) invalid(layer_label(arch, i) + ": width must be >= 1");
      if (layer.filter.height < 1 || layer.filter.width < 1) invalid(layer_label(arch, i) + ": filter must be >= 1");
      int in = cur.maps;
      if (layer.skip_from) {
        const int s = *layer.skip_from;
        if (s < 0 || static_cast<std::size_t>(s) >= i) {
          invalid(layer_label(arch, i) + ": skip_from " + std::to_string(s) + " must refer to an earlier layer");
        }
        const Shape& src = shapes[static_cast<std::size_t>(s)];
        if (src.height != cur.height || src.width != cur.width) {
          invalid(layer_label(arch, i) + ": skip_from " + std::to_string(s) + " has mismatched spatial size");
        }
        in += src.maps;
      }
      layer.in_maps = in;
      cur.maps = layer.out_maps;
    } else {
      if (layer.skip_from) invalid(layer_label(arch, i) + ": skip_from is only allowed on conv layers");
      layer.in_maps = cur.maps;
      layer.out_maps = 0;
      layer.filter = {0, 0};
      layer.scalable = false;
      if (layer.kind == LayerKind::kPool) {
        cur.height /= 2;
        cur.width /= 2;
        if (cur.height < 1 || cur.width < 1) invalid(layer_label(arch, i) + ": pooling below 1 pixel");
      } else {
        cur.height *= 2;
        cur.width *= 2;
      }
    }
    shapes.push_back(cur);
  }
  const LayerSpec& last = arch.layers.back();
  if (last.kind != LayerKind::kConv || last.scalable || last.out_maps != arch.num_classes) {
    invalid(arch.name + ": last layer must be a non-scalable conv classifier with num_classes outputs");
  }
  return arch;
}

ArchSpec arch_from_json(const nlohmann::json& j) {
  ArchSpec arch;
  try {
    arch.name = j.at("name").get<std::string>();
    arch.input_channels = j.at("input_channels").get<int>();
    arch.num_classes = j.at("num_classes").get<int>();
    if (j.contains("input_size")) {
      const auto& s = j.at("input_size");
      arch.input_size = {s.at(0).get<int>(), s.at(1).get<int>()};
    }
    const auto& layers = j.at("layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const auto& l = layers[i];
      const std::string kind = l.at("kind").get<std::string>();
      if (kind == "pool") {
        arch.layers.push_back(LayerSpec::pool());
      } else if (kind == "upsample") {
        arch.layers.push_back(LayerSpec::upsample());
      } else if (kind == "conv") {
        LayerSpec c;
        c.kind = LayerKind::kConv;
        c.out_maps = l.at("out_maps").get<int>();
        const auto& f = l.at("filter");
        c.filter = {f.at(0).get<int>(), f.at(1).get<int>()};
        // An omitted flag means scalable, except for the terminal classifier.
        const bool terminal = i + 1 == layers.size();
        c.scalable = l.contains("scalable") ? l["scalable"].get<bool>() : !terminal;
        if (l.contains("skip_from") && !l["skip_from"].is_null()) c.skip_from = l["skip_from"].get<int>();
        arch.layers.push_back(c);
      } else {
        fail(ErrorKind::kValidation, "layer " + std::to_string(i) + ": unknown kind '" + kind + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kValidation, std::string("arch json: ") + e.what());
  }
  return resolve_arch(std::move(arch));
}

nlohmann::json arch_to_json(const ArchSpec& arch) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : arch.layers) {
    switch (l.kind) {
      case LayerKind::kPool: layers.push_back({{"kind", "pool"}}); break;
      case LayerKind::kUpsample: layers.push_back({{"kind", "upsample"}}); break;
      case LayerKind::kConv: {
        nlohmann::json c = {{"kind", "conv"},
                            {"out_maps", l.out_maps},
                            {"filter", {l.filter.height, l.filter.width}},
                            {"scalable", l.scalable}};
        c["skip_from"] = l.skip_from ? nlohmann::json(*l.skip_from) : nlohmann::json(nullptr);
        layers.push_back(std::move(c));
        break;
      }
    }
  }
  return {{"name", arch.name},
          {"input_channels", arch.input_channels},
          {"num_classes", arch.num_classes},
          {"input_size", {arch.input_size.height, arch.input_size.width}},
          {"layers", std::move(layers)}};
}

ArchSpec parse_arch(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open arch file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kValidation, path.string() + ": " + e.what());
  }
  return arch_from_json(j);
}

ParamAccount param_count(const ArchSpec& arch, const AccountingOptions& options) {
  const ArchSpec resolved = resolve_arch(arch);
  const std::vector<Shape> shapes = output_shapes(resolved);
  ParamAccount acc;
  for (std::size_t i = 0; i < resolved.layers.size(); ++i) {
    const LayerSpec& l = resolved.layers[i];
    const Shape& out = shapes[i];
    const std::uint64_t spatial = static_cast<std::uint64_t>(out.height) * static_cast<std::uint64_t>(out.width);
    acc.activation_bytes += spatial * static_cast<std::uint64_t>(out.maps) *
                            static_cast<std::uint64_t>(options.bytes_per_activation);
    if (l.kind != LayerKind::kConv) continue;
    const std::uint64_t weights = static_cast<std::uint64_t>(l.in_maps) * l.filter.height * l.filter.width *
                                  static_cast<std::uint64_t>(l.out_maps);
    std::uint64_t count = weights;
    if (options.include_bias) count += static_cast<std::uint64_t>(l.out_maps);
    const bool terminal = i + 1 == resolved.layers.size();
    if (options.include_batchnorm && !terminal) count += 2 * static_cast<std::uint64_t>(l.out_maps);
    acc.per_layer.emplace_back(static_cast<int>(i), count);
    acc.theta += count;
    acc.macs += spatial * weights;
  }
  acc.log10_theta = std::log10(static_cast<double>(acc.theta));
  return acc;
}

std::string_view to_string(Rounding r) {
  switch (r) {
    case Rounding::kCeil: return "ceil";
    case Rounding::kFloor: return "floor";
    case Rounding::kNearest: return "nearest";
  }
  return "ceil";
}

Rounding parse_rounding(std::string_view text) {
  if (text == "ceil") return Rounding::kCeil;
  if (text == "floor") return Rounding::kFloor;
  if (text == "nearest") return Rounding::kNearest;
  fail(ErrorKind::kConfiguration, "unknown rounding mode '" + std::string(text) + "'");
}

namespace {

int scaled_width(int width, double alpha, Rounding rounding) {
  const double x = alpha * width;
  // Products such as 0.75 * 64 must stay exact under ceil/floor.
  const double eps = 1e-9 * std::max(1.0, x);
  double r = 0.0;
  switch (rounding) {
    case Rounding::kCeil: r = std::ceil(x - eps); break;
    case Rounding::kFloor: r = std::floor(x + eps); break;
    case Rounding::kNearest: r = std::round(x); break;
  }
  return std::max(1, static_cast<int>(r));
}

}  // namespace

ArchSpec scale_arch(const ArchSpec& arch, double alpha, Rounding rounding) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::kDomain, "alpha must lie in (0, 1]");
  ArchSpec out = arch;
  for (auto& layer : out.layers) {
    if (layer.kind == LayerKind::kConv && layer.scalable) layer.out_maps = scaled_width(layer.out_maps, alpha, rounding);
  }
  return resolve_arch(std::move(out));
}

ReductionRatios reduction_ratios(const ParamAccount& base, const ParamAccount& compressed) {
  ReductionRatios r;
  r.pr = static_cast<double>(base.theta) / static_cast<double>(std::max<std::uint64_t>(compressed.theta, 1));
  r.lr_proxy = static_cast<double>(base.macs) / static_cast<double>(std::max<std::uint64_t>(compressed.macs, 1));
  return r;
}

}  // namespace ccplan
