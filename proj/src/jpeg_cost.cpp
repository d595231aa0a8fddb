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

#include "ccplan/jpeg_cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "ccplan/error.hpp"

namespace ccplan::jpeg {

const std::array<std::uint8_t, 64> kLuminanceQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

const std::array<std::uint8_t, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10,  //
    17, 24, 32, 25, 18, 11, 4,  5,   //
    12, 19, 26, 33, 40, 48, 41, 34,  //
    27, 20, 13, 6,  7,  14, 21, 28,  //
    35, 42, 49, 56, 57, 50, 43, 36,  //
    29, 22, 15, 23, 30, 37, 44, 51,  //
    58, 59, 52, 45, 38, 31, 39, 46,  //
    53, 60, 61, 54, 47, 55, 62, 63};

namespace {

// Annex K.3 baseline luminance tables: codes per bit length, then symbols.
constexpr std::array<std::uint8_t, 16> kDcBits = {0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
constexpr std::array<std::uint8_t, 12> kDcValues = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
constexpr std::array<std::uint8_t, 16> kAcBits = {0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 125};
constexpr std::array<std::uint8_t, 162> kAcValues = {
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
    0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
    0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA};

constexpr int kZrl = 0xF0;
constexpr int kEob = 0x00;

template <std::size_t N>
constexpr std::array<std::uint8_t, 256> code_lengths(const std::array<std::uint8_t, 16>& bits,
                                                     const std::array<std::uint8_t, N>& values) {
  std::array<std::uint8_t, 256> lengths{};
  std::size_t k = 0;
  for (std::size_t len = 0; len < 16; ++len) {
    for (int i = 0; i < bits[len]; ++i) lengths[values[k++]] = static_cast<std::uint8_t>(len + 1);
  }
  return lengths;
}

constexpr auto kDcLengths = code_lengths(kDcBits, kDcValues);
constexpr auto kAcLengths = code_lengths(kAcBits, kAcValues);

// cos((2x+1) u pi / 16) scaled by the orthonormal factor of u.
const std::array<double, 64>& dct_basis() {
  static const std::array<double, 64> basis = [] {
    std::array<double, 64> b{};
    for (int u = 0; u < 8; ++u) {
      const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) {
        b[u * 8 + x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
    return b;
  }();
  return basis;
}

}  // namespace

Block forward_dct(const Block& samples) {
  const auto& basis = dct_basis();
  // Separable: rows first, then columns; summation order is fixed.
  Block rows{};
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += basis[u * 8 + x] * samples[y * 8 + x];
      rows[y * 8 + u] = acc;
    }
  }
  Block out{};
  for (int v = 0; v < 8; ++v) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += basis[v * 8 + y] * rows[y * 8 + u];
      out[v * 8 + u] = acc;
    }
  }
  // For u, v in {0, 4} every basis entry is +-1/8, so these coefficients are
  // exact multiples of 1/8 and can sit exactly on a rounding tie. Recompute
  // them from integer-valued sums so the quantizer sees the exact value.
  constexpr int kSign4[8] = {1, -1, -1, 1, 1, -1, -1, 1};
  for (int v : {0, 4}) {
    for (int u : {0, 4}) {
      double sum = 0.0;
      for (int y = 0; y < 8; ++y) {
        const int sy = v == 0 ? 1 : kSign4[y];
        for (int x = 0; x < 8; ++x) sum += (u == 0 ? 1 : kSign4[x]) * sy * samples[y * 8 + x];
      }
      out[v * 8 + u] = sum / 8.0;
    }
  }
  return out;
}

QuantizedBlock quantize(const Block& coefficients) {
  QuantizedBlock q{};
  for (int i = 0; i < 64; ++i) {
    // std::round rounds half away from zero.
    q[i] = static_cast<int>(std::round(coefficients[i] / kLuminanceQuant[i]));
  }
  return q;
}

int magnitude_category(int value) {
  unsigned magnitude = static_cast<unsigned>(std::abs(value));
  int bits = 0;
  while (magnitude != 0) {
    ++bits;
    magnitude >>= 1;
  }
  return bits;
}

int dc_code_length(int category) {
  if (category < 0 || category > 11) fail(ErrorKind::kDomain, "DC category out of range");
  return kDcLengths[category];
}

int ac_code_length(int symbol) {
  if (symbol < 0 || symbol > 255) return 0;
  return kAcLengths[symbol];
}

std::uint64_t block_bits(const QuantizedBlock& block, int previous_dc) {
  const int dc_category = magnitude_category(block[0] - previous_dc);
  std::uint64_t bits = static_cast<std::uint64_t>(dc_code_length(dc_category) + dc_category);

  int last_nonzero = 0;
  for (int k = 1; k < 64; ++k) {
    if (block[kZigzag[k]] != 0) last_nonzero = k;
  }
  int run = 0;
  for (int k = 1; k <= last_nonzero; ++k) {
    const int value = block[kZigzag[k]];
    if (value == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      bits += kAcLengths[kZrl];
      run -= 16;
    }
    const int size = magnitude_category(value);
    const int length = ac_code_length((run << 4) | size);
    if (length == 0) fail(ErrorKind::kDomain, "AC coefficient outside the baseline Huffman table");
    bits += static_cast<std::uint64_t>(length + size);
    run = 0;
  }
  if (last_nonzero < 63) bits += kAcLengths[kEob];
  return bits;
}

ScanCost scan_cost(const RasterImage& gray) {
  if (gray.empty()) fail(ErrorKind::kEmptyInput, "jpeg complexity of an empty image");
  if (gray.channels() != 1) fail(ErrorKind::kDomain, "jpeg complexity expects a grayscale image");
  ScanCost cost;
  cost.padded_width = (gray.width() + 7) / 8 * 8;
  cost.padded_height = (gray.height() + 7) / 8 * 8;

  int previous_dc = 0;
  Block samples{};
  for (int by = 0; by < cost.padded_height; by += 8) {
    for (int bx = 0; bx < cost.padded_width; bx += 8) {
      for (int y = 0; y < 8; ++y) {
        const int sy = std::min(by + y, gray.height() - 1);
        for (int x = 0; x < 8; ++x) {
          const int sx = std::min(bx + x, gray.width() - 1);
          samples[y * 8 + x] = static_cast<double>(gray.at(sx, sy)) - 128.0;
        }
      }
      const QuantizedBlock q = quantize(forward_dct(samples));
      cost.bits += block_bits(q, previous_dc);
      previous_dc = q[0];
    }
  }
  return cost;
}

}  // namespace ccplan::jpeg
