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

// Entropy-coded size of a baseline JPEG luminance scan, estimated without
// emitting a bitstream. Headers and markers are not counted.

#pragma once

#include <array>
#include <cstdint>

#include "ccplan/image.hpp"

namespace ccplan::jpeg {

using Block = std::array<double, 64>;
using QuantizedBlock = std::array<int, 64>;

/// ITU-T T.81 Annex K luminance quantization table (natural order), which is
/// the IJG quality-50 table.
extern const std::array<std::uint8_t, 64> kLuminanceQuant;

/// Natural-order index of the k-th zigzag coefficient.
extern const std::array<std::uint8_t, 64> kZigzag;

/// Orthonormal 2-D type-II DCT of a level-shifted 8x8 block (row-major).
Block forward_dct(const Block& samples);

/// Divide by the table and round half away from zero.
QuantizedBlock quantize(const Block& coefficients);

/// Number of magnitude bits (the JPEG "category") of a coefficient value.
int magnitude_category(int value);

/// Huffman code length of a DC category in the standard luminance DC table.
int dc_code_length(int category);

/// Huffman code length of a (run << 4 | size) symbol in the standard
/// luminance AC table. Returns 0 for symbols the table does not contain.
int ac_code_length(int symbol);

/// Bits the block costs: DC difference against `previous_dc` plus AC run-length
/// symbols (ZRL and EOB included).
std::uint64_t block_bits(const QuantizedBlock& block, int previous_dc);

struct ScanCost {
  std::uint64_t bits = 0;
  int padded_width = 0;
  int padded_height = 0;
};

/// Costs the whole gray image: edge-replicated padding to multiples of 8,
/// raster block order, DC predictor starting at 0.
ScanCost scan_cost(const RasterImage& gray);

}  // namespace ccplan::jpeg
