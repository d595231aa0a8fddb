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
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ccplan {

/// Row-major 8-bit raster with 1 (gray) or 3 (RGB, interleaved) channels.
class RasterImage {
 public:
  RasterImage() = default;
  /// Throws kValidation when the sample count does not match the shape.
  RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data);
  /// Zero-filled raster.
  RasterImage(int width, int height, int channels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) noexcept {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> data_;
};

/// Per-pixel foreground flags.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::vector<bool> foreground);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return foreground_.size(); }
  std::size_t foreground_count() const noexcept;
  bool at(int x, int y) const { return foreground_[static_cast<std::size_t>(y) * width_ + x]; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<bool> foreground_;
};

/// Decodes PNG, PGM (P2/P5) or PPM (P3/P6). 16-bit samples are divided by 257.
RasterImage load_image(const std::filesystem::path& path);

/// Decodes an image from memory; the format is sniffed from the leading bytes.
/// `label` names the source in error messages.
RasterImage decode_image(std::span<const std::uint8_t> bytes, const std::string& label);

/// Writes an 8-bit binary PGM (1 channel) or PPM (3 channels).
void save_pnm(const RasterImage& img, const std::filesystem::path& path);

/// Luma with BT.601 weights, rounded to nearest.
RasterImage to_gray(const RasterImage& img);

/// Gray sample > 127 is foreground.
BinaryMask binarize(const RasterImage& img);

BinaryMask load_mask(const std::filesystem::path& path);

}  // namespace ccplan
