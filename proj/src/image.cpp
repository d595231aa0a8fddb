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

#include "ccplan/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "ccplan/error.hpp"

namespace ccplan {

RasterImage::RasterImage(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width < 1 || height < 1) fail(ErrorKind::kValidation, "raster dimensions must be positive");
  if (channels != 1 && channels != 3) fail(ErrorKind::kValidation, "raster must have 1 or 3 channels");
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    fail(ErrorKind::kValidation, "raster sample count does not match width*height*channels");
  }
}

RasterImage::RasterImage(int width, int height, int channels)
    : RasterImage(width, height, channels,
                  std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                            static_cast<std::size_t>(std::max(height, 0)) *
                                            static_cast<std::size_t>(std::max(channels, 0)))) {}

BinaryMask::BinaryMask(int width, int height, std::vector<bool> foreground)
    : width_(width), height_(height), foreground_(std::move(foreground)) {
  if (width < 0 || height < 0 ||
      foreground_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    fail(ErrorKind::kValidation, "mask pixel count does not match width*height");
  }
}

std::size_t BinaryMask::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(foreground_.begin(), foreground_.end(), true));
}

namespace {

std::uint8_t rescale_sample(unsigned value, unsigned maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(value);
  if (maxval == 65535) return static_cast<std::uint8_t>(value / 257);
  return static_cast<std::uint8_t>((value * 255u + maxval / 2) / maxval);
}

class PnmReader {
 public:
  PnmReader(std::span<const std::uint8_t> bytes, const std::string& label)
      : bytes_(bytes), label_(label) {}

  RasterImage read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') fail(ErrorKind::kFormat, label_ + ": not a PNM file");
    const char type = static_cast<char>(bytes_[1]);
    pos_ = 2;
    if (type != '2' && type != '3' && type != '5' && type != '6') {
      fail(ErrorKind::kFormat, label_ + ": unsupported PNM variant P" + std::string(1, type));
    }
    const int channels = (type == '3' || type == '6') ? 3 : 1;
    const bool ascii = type == '2' || type == '3';
    const unsigned width = header_number();
    const unsigned height = header_number();
    const unsigned maxval = header_number();
    if (width == 0 || height == 0) fail(ErrorKind::kDecode, label_ + ": zero image dimension");
    if (maxval == 0 || maxval > 65535) fail(ErrorKind::kDecode, label_ + ": invalid maxval");

    const std::size_t samples = static_cast<std::size_t>(width) * height * channels;
    std::vector<std::uint8_t> data(samples);
    if (ascii) {
      for (auto& s : data) s = rescale_sample(checked(header_number(), maxval), maxval);
    } else {
      // Exactly one whitespace byte separates the header from the raster.
      if (pos_ >= bytes_.size()) fail(ErrorKind::kDecode, label_ + ": truncated PNM header");
      ++pos_;
      const std::size_t bps = maxval > 255 ? 2 : 1;
      if (bytes_.size() - pos_ < samples * bps) fail(ErrorKind::kDecode, label_ + ": truncated PNM raster");
      for (std::size_t i = 0; i < samples; ++i) {
        unsigned v = bytes_[pos_ + i * bps];
        if (bps == 2) v = (v << 8) | bytes_[pos_ + i * bps + 1];
        data[i] = rescale_sample(checked(v, maxval), maxval);
      }
    }
    return RasterImage(static_cast<int>(width), static_cast<int>(height), channels, std::move(data));
  }

 private:
  unsigned checked(unsigned v, unsigned maxval) const {
    if (v > maxval) fail(ErrorKind::kDecode, label_ + ": sample exceeds maxval");
    return v;
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned header_number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      fail(ErrorKind::kDecode, label_ + ": truncated or malformed PNM data");
    }
    unsigned long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1u << 30) fail(ErrorKind::kDecode, label_ + ": PNM number out of range");
      ++pos_;
    }
    return static_cast<unsigned>(value);
  }

  std::span<const std::uint8_t> bytes_;
  std::string label_;
  std::size_t pos_ = 0;
};

RasterImage decode_png(std::span<const std::uint8_t> bytes, const std::string& label) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    std::string msg = label + ": " + image.message;
    png_image_free(&image);
    fail(ErrorKind::kDecode, msg);
  }
  const bool sixteen = (image.format & PNG_FORMAT_FLAG_LINEAR) != 0;
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const int channels = color ? 3 : 1;
  image.format = (color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY) | (sixteen ? PNG_FORMAT_FLAG_LINEAR : 0u);

  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  const std::size_t samples = static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint8_t> data(samples);
  bool ok = false;
  if (sixteen) {
    std::vector<png_uint_16> wide(samples);
    ok = png_image_finish_read(&image, nullptr, wide.data(), 0, nullptr) != 0;
    for (std::size_t i = 0; i < samples; ++i) data[i] = static_cast<std::uint8_t>(wide[i] / 257);
  } else {
    ok = png_image_finish_read(&image, nullptr, data.data(), 0, nullptr) != 0;
  }
  if (!ok) {
    std::string msg = label + ": " + image.message;
    png_image_free(&image);
    fail(ErrorKind::kDecode, msg);
  }
  return RasterImage(width, height, channels, std::move(data));
}

}  // namespace

RasterImage decode_image(std::span<const std::uint8_t> bytes, const std::string& label) {
  static constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(bytes.begin(), bytes.begin() + 8, kPngSignature)) {
    return decode_png(bytes, label);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') return PnmReader(bytes, label).read();
  if (bytes.empty()) fail(ErrorKind::kDecode, label + ": empty file");
  fail(ErrorKind::kFormat, label + ": unsupported image format (expected PNG, PGM or PPM)");
}

RasterImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kDecode, path.string() + ": cannot open file");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_image(bytes, path.string());
}

void save_pnm(const RasterImage& img, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, path.string() + ": cannot write file");
  out << (img.channels() == 3 ? "P6" : "P5") << "\n" << img.width() << " " << img.height() << "\n255\n";
  const auto data = img.data();
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) fail(ErrorKind::kIo, path.string() + ": write failed");
}

RasterImage to_gray(const RasterImage& img) {
  if (img.channels() == 1) return img;
  RasterImage gray(img.width(), img.height(), 1);
  const auto src = img.data();
  auto dst = gray.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double y = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
  }
  return gray;
}

BinaryMask binarize(const RasterImage& img) {
  const RasterImage gray = to_gray(img);
  std::vector<bool> fg(gray.pixel_count());
  const auto src = gray.data();
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = src[i] > 127;
  return BinaryMask(gray.width(), gray.height(), std::move(fg));
}

BinaryMask load_mask(const std::filesystem::path& path) { return binarize(load_image(path)); }

}  // namespace ccplan
