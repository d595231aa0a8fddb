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

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccplan/image.hpp"

namespace ccplan {

/// Mean of (sample/255)^2 over a gray image.
double signal_energy(const RasterImage& gray);

/// Mean normalized Sobel and Scharr gradient magnitude over a three-level
/// box-filter pyramid (full, half, quarter resolution).
double edge_complexity(const RasterImage& gray);

/// Estimated baseline-JPEG entropy-coded bits per raw bit (J).
double jpeg_complexity(const RasterImage& gray);

/// Foreground fraction of a mask (B for a single mask).
double blob_density(const BinaryMask& mask);

/// omega * j + (1 - omega) * b; throws kDomain unless omega is in [0, 1].
double combine_jb(double j, double b, double omega);

/// 2x2 box-filter downsample; a trailing odd row/column is discarded.
RasterImage downsample_box2(const RasterImage& gray);

struct ComplexityProfile {
  std::string dataset_name;
  std::size_t image_count = 0;
  std::optional<double> energy;
  std::optional<double> edge;
  double jpeg_j = 0.0;
  std::optional<double> blob_b;
  std::optional<double> jb;
  std::optional<double> omega;

  /// Sets jb (and omega) from jpeg_j and blob_b. Throws kMissingMask when
  /// blob_b is absent.
  void apply_omega(double w);

  friend bool operator==(const ComplexityProfile&, const ComplexityProfile&) = default;
};

struct DatasetManifest {
  std::string name;
  std::filesystem::path images_dir;
  std::string images_glob = "*";
  std::optional<std::filesystem::path> masks_dir;
  std::optional<std::string> mask_suffix;
};

/// Reads manifest JSON. Relative directories resolve against the manifest's
/// own directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

struct DatasetEntry {
  std::filesystem::path image;
  std::optional<std::filesystem::path> mask;
};

/// Lists images matching the glob, sorted by path, paired with their masks.
/// Throws kEmptyInput for no matches, kManifest for a missing mask.
std::vector<DatasetEntry> resolve_manifest(const DatasetManifest& manifest);

struct ImageMetrics {
  std::filesystem::path image;
  int width = 0;
  int height = 0;
  double energy = 0.0;
  double edge = 0.0;
  double jpeg_j = 0.0;
  std::optional<std::size_t> foreground_pixels;
  std::optional<std::size_t> mask_pixels;
};

ImageMetrics measure_image(const DatasetEntry& entry);

struct DatasetAnalysis {
  ComplexityProfile profile;
  std::vector<ImageMetrics> per_image;  // ascending path order
};

/// Averages per-image metrics; B is pooled over all mask pixels. Entries are
/// sorted first, so the result does not depend on input order or on the
/// worker count (`threads` = 0 picks hardware concurrency).
DatasetAnalysis dataset_complexity(const std::string& name, std::vector<DatasetEntry> entries,
                                   unsigned threads = 0);

DatasetAnalysis dataset_complexity(const DatasetManifest& manifest, unsigned threads = 0);

}  // namespace ccplan
