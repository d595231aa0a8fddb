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

#include "ccplan/complexity.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "ccplan/error.hpp"
#include "ccplan/jpeg_cost.hpp"
#include "json.hpp"

namespace ccplan {

namespace fs = std::filesystem;

namespace {

void require_gray(const RasterImage& img, const char* what) {
  if (img.channels() != 1) fail(ErrorKind::kDomain, std::string(what) + " expects a grayscale image");
}

struct Kernel3 {
  int gx[3][3];
};

// Horizontal-derivative kernels; the vertical one is the transpose.
constexpr Kernel3 kSobel = {{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
constexpr Kernel3 kScharr = {{{-3, 0, 3}, {-10, 0, 10}, {-3, 0, 3}}};

// Mean gradient magnitude over interior pixels divided by `max_response`.
double mean_gradient(const RasterImage& gray, const Kernel3& k, double max_response) {
  const int w = gray.width();
  const int h = gray.height();
  double sum = 0.0;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      int gx = 0;
      int gy = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int v = gray.at(x + dx, y + dy);
          gx += k.gx[dy + 1][dx + 1] * v;
          gy += k.gx[dx + 1][dy + 1] * v;
        }
      }
      sum += std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy);
    }
  }
  const double interior = static_cast<double>(w - 2) * static_cast<double>(h - 2);
  return sum / interior / max_response;
}

}  // namespace

double signal_energy(const RasterImage& gray) {
  if (gray.empty()) fail(ErrorKind::kEmptyInput, "signal energy of an empty image");
  require_gray(gray, "signal energy");
  std::uint64_t sum = 0;
  for (const std::uint8_t s : gray.data()) sum += static_cast<std::uint64_t>(s) * s;
  return static_cast<double>(sum) / (255.0 * 255.0 * static_cast<double>(gray.pixel_count()));
}

RasterImage downsample_box2(const RasterImage& gray) {
  require_gray(gray, "pyramid downsampling");
  const int w = gray.width() / 2;
  const int h = gray.height() / 2;
  if (w < 1 || h < 1) fail(ErrorKind::kSize, "image too small to downsample");
  RasterImage out(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int sum = gray.at(2 * x, 2 * y) + gray.at(2 * x + 1, 2 * y) + gray.at(2 * x, 2 * y + 1) +
                      gray.at(2 * x + 1, 2 * y + 1);
      out.at(x, y) = static_cast<std::uint8_t>((sum + 2) / 4);
    }
  }
  return out;
}

double edge_complexity(const RasterImage& gray) {
  require_gray(gray, "edge complexity");
  if (gray.width() < 4 || gray.height() < 4) fail(ErrorKind::kSize, "edge complexity needs at least 4x4 pixels");
  static const double kSobelMax = 4.0 * 255.0 * std::sqrt(2.0);
  static const double kScharrMax = 16.0 * 255.0 * std::sqrt(2.0);

  double total = 0.0;
  int terms = 0;
  RasterImage level = gray;
  for (int l = 0; l < 3; ++l) {
    if (l > 0) {
      if (level.width() < 2 || level.height() < 2) break;
      level = downsample_box2(level);
    }
    // A level without interior pixels has no defined gradient mean.
    if (level.width() < 3 || level.height() < 3) break;
    total += mean_gradient(level, kSobel, kSobelMax);
    total += mean_gradient(level, kScharr, kScharrMax);
    terms += 2;
  }
  return total / terms;
}

double jpeg_complexity(const RasterImage& gray) {
  const jpeg::ScanCost cost = jpeg::scan_cost(gray);
  const double raw_bits = 8.0 * cost.padded_width * static_cast<double>(cost.padded_height);
  return static_cast<double>(cost.bits) / raw_bits;
}

double blob_density(const BinaryMask& mask) {
  if (mask.pixel_count() == 0) fail(ErrorKind::kEmptyInput, "blob density of an empty mask");
  return static_cast<double>(mask.foreground_count()) / static_cast<double>(mask.pixel_count());
}

double combine_jb(double j, double b, double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) fail(ErrorKind::kDomain, "omega must lie in [0, 1]");
  return omega * j + (1.0 - omega) * b;
}

void ComplexityProfile::apply_omega(double w) {
  if (!blob_b) fail(ErrorKind::kMissingMask, "profile '" + dataset_name + "' has no blob density");
  jb = combine_jb(jpeg_j, *blob_b, w);
  omega = w;
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kManifest, path.string() + ": cannot open manifest");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kManifest, path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path rel(p);
    return rel.is_absolute() ? rel : base / rel;
  };
  DatasetManifest m;
  try {
    m.name = j.at("name").get<std::string>();
    m.images_dir = resolve(j.at("images_dir").get<std::string>());
    if (j.contains("images_glob") && !j["images_glob"].is_null()) m.images_glob = j["images_glob"].get<std::string>();
    if (j.contains("masks_dir") && !j["masks_dir"].is_null()) m.masks_dir = resolve(j["masks_dir"].get<std::string>());
    if (j.contains("mask_suffix") && !j["mask_suffix"].is_null()) m.mask_suffix = j["mask_suffix"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kManifest, path.string() + ": " + e.what());
  }
  if (m.name.empty()) fail(ErrorKind::kManifest, path.string() + ": dataset name is empty");
  return m;
}

std::vector<DatasetEntry> resolve_manifest(const DatasetManifest& manifest) {
  std::error_code ec;
  if (!fs::is_directory(manifest.images_dir, ec)) {
    fail(ErrorKind::kManifest, manifest.images_dir.string() + ": images_dir is not a directory");
  }
  std::vector<fs::path> images;
  for (const auto& item : fs::directory_iterator(manifest.images_dir)) {
    if (!item.is_regular_file()) continue;
    const std::string file = item.path().filename().string();
    if (fnmatch(manifest.images_glob.c_str(), file.c_str(), 0) == 0) images.push_back(item.path());
  }
  if (images.empty()) fail(ErrorKind::kEmptyInput, "empty dataset: no images match '" + manifest.images_glob + "'");
  std::sort(images.begin(), images.end());

  std::vector<DatasetEntry> entries;
  entries.reserve(images.size());
  for (const auto& img : images) {
    DatasetEntry e{img, std::nullopt};
    if (manifest.masks_dir) {
      const std::string stem = img.stem().string();
      if (manifest.mask_suffix) {
        const fs::path candidate = *manifest.masks_dir / (stem + *manifest.mask_suffix);
        if (fs::is_regular_file(candidate, ec)) e.mask = candidate;
      } else {
        for (const char* ext : {".png", ".pgm", ".ppm"}) {
          const fs::path candidate = *manifest.masks_dir / (stem + ext);
          if (fs::is_regular_file(candidate, ec)) {
            e.mask = candidate;
            break;
          }
        }
      }
      if (!e.mask) fail(ErrorKind::kManifest, "missing mask for image stem '" + stem + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

ImageMetrics measure_image(const DatasetEntry& entry) {
  const RasterImage gray = to_gray(load_image(entry.image));
  ImageMetrics m;
  m.image = entry.image;
  m.width = gray.width();
  m.height = gray.height();
  m.energy = signal_energy(gray);
  m.edge = edge_complexity(gray);
  m.jpeg_j = jpeg_complexity(gray);
  if (entry.mask) {
    const BinaryMask mask = load_mask(*entry.mask);
    m.foreground_pixels = mask.foreground_count();
    m.mask_pixels = mask.pixel_count();
  }
  return m;
}

DatasetAnalysis dataset_complexity(const std::string& name, std::vector<DatasetEntry> entries, unsigned threads) {
  if (entries.empty()) fail(ErrorKind::kEmptyInput, "empty dataset '" + name + "'");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const DatasetEntry& a, const DatasetEntry& b) { return a.image < b.image; });

  const std::size_t n = entries.size();
  std::vector<ImageMetrics> metrics(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        metrics[i] = measure_image(entries[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Reduction runs in sorted order regardless of which worker finished first.
  double energy = 0.0, edge = 0.0, j = 0.0;
  std::size_t fg = 0, mask_px = 0, with_mask = 0;
  for (const auto& m : metrics) {
    energy += m.energy;
    edge += m.edge;
    j += m.jpeg_j;
    if (m.mask_pixels) {
      ++with_mask;
      fg += *m.foreground_pixels;
      mask_px += *m.mask_pixels;
    }
  }
  DatasetAnalysis out;
  out.profile.dataset_name = name;
  out.profile.image_count = n;
  out.profile.energy = energy / static_cast<double>(n);
  out.profile.edge = edge / static_cast<double>(n);
  out.profile.jpeg_j = j / static_cast<double>(n);
  if (with_mask == n) {
    if (mask_px == 0) fail(ErrorKind::kEmptyInput, "masks of dataset '" + name + "' contain no pixels");
    out.profile.blob_b = static_cast<double>(fg) / static_cast<double>(mask_px);
  }
  out.per_image = std::move(metrics);
  return out;
}

DatasetAnalysis dataset_complexity(const DatasetManifest& manifest, unsigned threads) {
  return dataset_complexity(manifest.name, resolve_manifest(manifest), threads);
}

}  // namespace ccplan
