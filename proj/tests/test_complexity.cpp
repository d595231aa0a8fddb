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

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ccplan/complexity.hpp"
#include "ccplan/error.hpp"
#include "ccplan/jpeg_cost.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace ccplan;
using namespace ccplan::testing;

namespace {

// ---- Independent baseline-JPEG cost oracle. Code lengths come from the
// canonical Huffman construction over the raw Annex K BITS/HUFFVAL lists and
// the zigzag order from walking anti-diagonals.

constexpr std::array<int, 16> kDcBits = {0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
constexpr std::array<int, 16> kAcBits = {0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d};
constexpr std::array<int, 162> kAcVals = {
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07, 0x22, 0x71,
    0x14, 0x32, 0x81, 0x91, 0xa1, 0x08, 0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0, 0x24, 0x33, 0x62, 0x72,
    0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28, 0x29, 0x2a, 0x34, 0x35, 0x36, 0x37,
    0x38, 0x39, 0x3a, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59,
    0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6a, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x83,
    0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3,
    0xa4, 0xa5, 0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3,
    0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
    0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4, 0xf5, 0xf6, 0xf7, 0xf8, 0xf9, 0xfa};
constexpr std::array<int, 64> kQuant = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,  14, 13, 16, 24, 40, 57,
    69, 56, 14, 17, 22,  29,  51,  87,  80, 62, 18, 22, 37,  56,  68,  109, 103, 77, 24, 35, 55, 64,
    81, 104, 113, 92, 49, 64, 78,  87,  103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

constexpr long double kPi = 3.14159265358979323846264338327950288L;

struct Oracle {
  std::array<int, 256> ac_len{};
  std::array<int, 12> dc_len{};
  std::array<int, 64> zigzag{};

  Oracle() {
    int k = 0;
    for (int l = 0; l < 16; ++l)
      for (int i = 0; i < kDcBits[l]; ++i) dc_len[k++] = l + 1;
    k = 0;
    for (int l = 0; l < 16; ++l)
      for (int i = 0; i < kAcBits[l]; ++i) ac_len[kAcVals[k++]] = l + 1;
    k = 0;
    for (int s = 0; s < 15; ++s) {
      for (int i = 0; i <= s; ++i) {
        const int r = (s % 2 == 0) ? s - i : i;
        const int c = s - r;
        if (r < 8 && c < 8) zigzag[k++] = r * 8 + c;
      }
    }
  }

  static int category(int v) {
    int n = 0;
    for (int a = std::abs(v); a != 0; a >>= 1) ++n;
    return n;
  }

  std::uint64_t bits(const RasterImage& g) const {
    const int pw = (g.width() + 7) / 8 * 8;
    const int ph = (g.height() + 7) / 8 * 8;
    std::uint64_t total = 0;
    int prev = 0;
    for (int by = 0; by < ph; by += 8) {
      for (int bx = 0; bx < pw; bx += 8) {
        int q[64];
        for (int v = 0; v < 8; ++v) {
          for (int u = 0; u < 8; ++u) {
            long double s = 0.0L;
            for (int y = 0; y < 8; ++y) {
              for (int x = 0; x < 8; ++x) {
                const int sx = std::min(bx + x, g.width() - 1);
                const int sy = std::min(by + y, g.height() - 1);
                s += (g.at(sx, sy) - 128.0L) * std::cos((2 * x + 1) * u * kPi / 16) *
                     std::cos((2 * y + 1) * v * kPi / 16);
              }
            }
            const long double cu = u == 0 ? 1.0L / std::sqrt(2.0L) : 1.0L;
            const long double cv = v == 0 ? 1.0L / std::sqrt(2.0L) : 1.0L;
            const long double coef = 0.25L * cu * cv * s / kQuant[v * 8 + u];
            // Values within 1e-9 of a half are exact ties in real arithmetic.
            const long double mag = std::abs(coef);
            long double r = std::floor(mag);
            if (mag - r >= 0.5L - 1e-9L) r += 1.0L;
            q[v * 8 + u] = static_cast<int>(coef < 0 ? -r : r);
          }
        }
        const int cat = category(q[0] - prev);
        total += dc_len[cat] + cat;
        prev = q[0];
        int run = 0;
        for (int k = 1; k < 64; ++k) {
          const int c = q[zigzag[k]];
          if (c == 0) {
            ++run;
            continue;
          }
          while (run > 15) {
            total += ac_len[0xf0];
            run -= 16;
          }
          const int size = category(c);
          total += ac_len[(run << 4) | size] + size;
          run = 0;
        }
        if (run > 0) total += ac_len[0x00];
      }
    }
    return total;
  }
};

double step_edge_closed_form() { return (2.0 / 62 + 2.0 / 30 + 2.0 / 14) / 3.0 / std::sqrt(2.0); }

// Brute-force Sobel+Scharr edge metric over the box pyramid.
double edge_oracle(RasterImage g) {
  const int sob[3] = {1, 2, 1};
  const int sch[3] = {3, 10, 3};
  double sum = 0.0;
  int terms = 0;
  for (int level = 0; level < 3; ++level) {
    for (int op = 0; op < 2; ++op) {
      const int* w = op == 0 ? sob : sch;
      const double norm = (op == 0 ? 4.0 : 16.0) * 255.0 * std::sqrt(2.0);
      double acc = 0.0;
      for (int y = 1; y < g.height() - 1; ++y) {
        for (int x = 1; x < g.width() - 1; ++x) {
          double gx = 0, gy = 0;
          for (int t = -1; t <= 1; ++t) {
            gx += w[t + 1] * (g.at(x + 1, y + t) - g.at(x - 1, y + t));
            gy += w[t + 1] * (g.at(x + t, y + 1) - g.at(x + t, y - 1));
          }
          acc += std::sqrt(gx * gx + gy * gy) / norm;
        }
      }
      sum += acc / ((g.width() - 2.0) * (g.height() - 2.0));
      ++terms;
    }
    RasterImage d(g.width() / 2, g.height() / 2, 1);
    for (int y = 0; y < d.height(); ++y)
      for (int x = 0; x < d.width(); ++x)
        d.at(x, y) = static_cast<std::uint8_t>(
            (g.at(2 * x, 2 * y) + g.at(2 * x + 1, 2 * y) + g.at(2 * x, 2 * y + 1) + g.at(2 * x + 1, 2 * y + 1) + 2) / 4);
    g = d;
  }
  return sum / terms;
}

BinaryMask mask_with(int w, int h, int fg) {
  std::vector<bool> v(static_cast<std::size_t>(w) * h, false);
  for (int i = 0; i < fg; ++i) v[i] = true;
  return BinaryMask(w, h, v);
}

}  // namespace

TEST_SUITE("signal_energy") {
  TEST_CASE("constant images") {
    CHECK(signal_energy(constant_image(8, 8, 0)) == 0.0);
    CHECK(signal_energy(constant_image(8, 8, 255)) == 1.0);
    CHECK(signal_energy(constant_image(8, 8, 128)) == doctest::Approx((128.0 / 255.0) * (128.0 / 255.0)).epsilon(1e-14));
    CHECK(std::abs(signal_energy(constant_image(8, 8, 128)) - 0.25198) <= 2e-5);
  }
  TEST_CASE("empty image is an error") { CHECK_THROWS_AS(signal_energy(RasterImage()), Error); }
}

TEST_SUITE("edge_complexity") {
  TEST_CASE("constant image has no edges") { CHECK(edge_complexity(constant_image(64, 64, 77)) == 0.0); }

  TEST_CASE("vertical step matches the closed form and the convolution oracle") {
    const RasterImage step = step_image(64, 64);
    CHECK(edge_complexity(step) == doctest::Approx(step_edge_closed_form()).epsilon(1e-12));
    CHECK(edge_oracle(step) == doctest::Approx(step_edge_closed_form()).epsilon(1e-12));
  }

  TEST_CASE("noise agrees with the convolution oracle") {
    for (std::uint32_t seed : {1u, 2u, 3u}) {
      const RasterImage n = noise_image(40, 36, seed);
      CHECK(edge_complexity(n) == doctest::Approx(edge_oracle(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("90 degree rotation leaves the metric unchanged") {
    for (std::uint32_t seed : {5u, 6u}) {
      const RasterImage n = noise_image(64, 48, seed);
      CHECK(edge_complexity(rotate90(n)) == doctest::Approx(edge_complexity(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("range and ordering") {
    const double e = edge_complexity(noise_image(64, 64, 42));
    CHECK(e > 0.0);
    CHECK(e <= 1.0);
    CHECK(e > edge_complexity(constant_image(64, 64, 10)));
  }

  TEST_CASE("images below 4x4 are rejected") {
    CHECK_THROWS_AS(edge_complexity(constant_image(3, 8, 0)), Error);
    CHECK_NOTHROW(edge_complexity(constant_image(4, 4, 0)));
  }
}

TEST_SUITE("jpeg_complexity") {
  TEST_CASE("standard table code lengths") {
    CHECK(jpeg::dc_code_length(0) == 2);
    CHECK(jpeg::dc_code_length(11) == 9);
    CHECK(jpeg::ac_code_length(0x00) == 4);
    CHECK(jpeg::ac_code_length(0x01) == 2);
    CHECK(jpeg::ac_code_length(0xf0) == 11);
    CHECK(jpeg::ac_code_length(0xfa) == 16);
    const Oracle o;
    for (int s = 0; s < 256; ++s) CHECK(jpeg::ac_code_length(s) == o.ac_len[s]);
    for (int c = 0; c < 12; ++c) CHECK(jpeg::dc_code_length(c) == o.dc_len[c]);
  }

  TEST_CASE("zigzag order matches the anti-diagonal walk") {
    const Oracle o;
    for (int k = 0; k < 64; ++k) CHECK(jpeg::kZigzag[k] == o.zigzag[k]);
  }

  TEST_CASE("rounding is half away from zero") {
    jpeg::Block b{};
    b[0] = 8.0 * 16;     // exactly 8
    b[1] = -5.5 * 11;    // -5.5 -> -6
    b[2] = 2.5 * 10;     // 2.5 -> 3
    const auto q = jpeg::quantize(b);
    CHECK(q[0] == 8);
    CHECK(q[1] == -6);
    CHECK(q[2] == 3);
  }

  TEST_CASE("constant 64x64 mid-gray costs 6 bits per block") {
    const jpeg::ScanCost c = jpeg::scan_cost(constant_image(64, 64, 128));
    CHECK(c.bits == 384);
    CHECK(jpeg_complexity(constant_image(64, 64, 128)) == 384.0 / 32768.0);
  }

  TEST_CASE("constant 64x64 at 200 pays one DC difference") {
    // DC = 8*72/16 = 36 -> category 6: 4 code bits + 6 extra + EOB 4; then 63 x 6.
    CHECK(jpeg::scan_cost(constant_image(64, 64, 200)).bits == 14 + 63 * 6);
  }

  TEST_CASE("scan cost equals the independent oracle") {
    const Oracle o;
    for (auto [w, h, seed] : {std::tuple{64, 64, 1u}, {13, 21, 2u}, {8, 8, 3u}, {1, 1, 4u}, {30, 17, 5u}}) {
      const RasterImage n = noise_image(w, h, seed);
      const auto c = jpeg::scan_cost(n);
      CHECK(c.bits == o.bits(n));
      CHECK(c.padded_width == (w + 7) / 8 * 8);
      CHECK(c.padded_height == (h + 7) / 8 * 8);
    }
    CHECK(jpeg::scan_cost(step_image(64, 64)).bits == o.bits(step_image(64, 64)));
  }

  TEST_CASE("noise costs more than a constant image") {
    CHECK(jpeg_complexity(noise_image(64, 64, 1234)) > jpeg_complexity(constant_image(64, 64, 128)));
    CHECK(jpeg_complexity(constant_image(64, 64, 128)) > 0.0);
  }

  TEST_CASE("empty image is an error") { CHECK_THROWS_AS(jpeg_complexity(RasterImage()), Error); }
}

TEST_SUITE("blob_density and JB") {
  TEST_CASE("blob density examples") {
    CHECK(blob_density(mask_with(4, 4, 16)) == 1.0);
    CHECK(blob_density(mask_with(4, 4, 0)) == 0.0);
    CHECK(blob_density(mask_with(10, 10, 7)) == doctest::Approx(0.07));
    CHECK_THROWS_AS(blob_density(BinaryMask()), Error);
  }

  TEST_CASE("combine_jb examples and domain") {
    CHECK(combine_jb(0.2401, 0.5711, 1.0) == 0.2401);
    CHECK(combine_jb(0.2401, 0.5711, 0.0) == 0.5711);
    CHECK(combine_jb(0.2, 0.4, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(combine_jb(0.2, 0.4, 1.01), Error);
    CHECK_THROWS_AS(combine_jb(0.2, 0.4, -0.01), Error);
  }

  TEST_CASE("combine_jb is linear in omega and monotone in J and B") {
    for (int i = 0; i <= 100; ++i) {
      const double w = i / 100.0;
      CHECK(combine_jb(0.3, 0.7, w) == doctest::Approx(0.7 - 0.4 * w).epsilon(1e-14));
      CHECK(combine_jb(0.31, 0.7, w) >= combine_jb(0.3, 0.7, w));
      CHECK(combine_jb(0.3, 0.71, w) >= combine_jb(0.3, 0.7, w));
    }
  }

  TEST_CASE("apply_omega needs a blob density") {
    ComplexityProfile p;
    p.jpeg_j = 0.2;
    CHECK_THROWS_AS(p.apply_omega(0.5), Error);
    p.blob_b = 0.4;
    p.apply_omega(0.5);
    CHECK(*p.jb == doctest::Approx(0.3));
    CHECK(*p.omega == 0.5);
  }
}

TEST_SUITE("dataset_complexity") {
  struct Dataset {
    TempDir dir{"dataset"};
    std::filesystem::path manifest;
  };

  void make_dataset(Dataset & d, bool masks) {
    save_pnm(noise_image(32, 32, 11), d.dir / "img/b.pgm");
    save_pnm(step_image(32, 24), d.dir / "img/a.pgm");
    if (masks) {
      RasterImage m1(10, 10, 1);
      for (int i = 0; i < 7; ++i) m1.data()[i] = 255;
      save_pnm(m1, d.dir / "masks/a.pgm");
      save_pnm(RasterImage(10, 10, 1), d.dir / "masks/b.pgm");
    }
    d.manifest = d.dir / "ds.json";
    write_text(d.manifest, std::string(R"({"name":"toy","images_dir":"img","images_glob":"*.pgm","masks_dir":)") +
                               (masks ? "\"masks\"" : "null") + R"(,"mask_suffix":null})");
  }

  TEST_CASE("profile averages per-image metrics and pools blob density") {
    Dataset d;
    std::filesystem::create_directories(d.dir / "img");
    std::filesystem::create_directories(d.dir / "masks");
    make_dataset(d, true);
    const DatasetAnalysis a = dataset_complexity(load_manifest(d.manifest), 1);
    REQUIRE(a.per_image.size() == 2);
    CHECK(a.per_image[0].image.filename() == "a.pgm");
    const double ja = jpeg_complexity(step_image(32, 24));
    const double jb = jpeg_complexity(noise_image(32, 32, 11));
    CHECK(a.profile.jpeg_j == doctest::Approx((ja + jb) / 2).epsilon(1e-15));
    CHECK(*a.profile.blob_b == doctest::Approx(0.035));
    CHECK(a.profile.image_count == 2);
    CHECK(*a.profile.energy >= 0.0);
    CHECK(*a.profile.edge <= 1.0);
  }

  TEST_CASE("blob density absent without masks") {
    Dataset d;
    std::filesystem::create_directories(d.dir / "img");
    make_dataset(d, false);
    CHECK_FALSE(dataset_complexity(load_manifest(d.manifest)).profile.blob_b.has_value());
  }

  TEST_CASE("bit-identical across thread counts and runs") {
    Dataset d;
    std::filesystem::create_directories(d.dir / "img");
    for (int i = 0; i < 9; ++i) save_pnm(noise_image(24 + i, 20, 100 + i), d.dir / ("img/n" + std::to_string(i) + ".pgm"));
    std::filesystem::create_directories(d.dir / "masks");
    make_dataset(d, true);
    for (int i = 0; i < 9; ++i) save_pnm(RasterImage(5, 5, 1), d.dir / ("masks/n" + std::to_string(i) + ".pgm"));
    const auto ref = dataset_complexity(load_manifest(d.manifest), 1).profile;
    for (unsigned t : {0u, 2u, 3u, 8u, 16u}) {
      const auto p = dataset_complexity(load_manifest(d.manifest), t).profile;
      CHECK(p == ref);
    }
  }

  TEST_CASE("listing every file k times leaves the profile unchanged") {
    Dataset d;
    std::filesystem::create_directories(d.dir / "img");
    std::filesystem::create_directories(d.dir / "masks");
    make_dataset(d, true);
    const auto entries = resolve_manifest(load_manifest(d.manifest));
    const auto base = dataset_complexity("toy", entries).profile;
    for (int k : {2, 3}) {
      std::vector<DatasetEntry> dup;
      for (int i = 0; i < k; ++i) dup.insert(dup.end(), entries.begin(), entries.end());
      const auto p = dataset_complexity("toy", dup).profile;
      CHECK(p.jpeg_j == doctest::Approx(base.jpeg_j).epsilon(1e-14));
      CHECK(*p.edge == doctest::Approx(*base.edge).epsilon(1e-14));
      CHECK(*p.energy == doctest::Approx(*base.energy).epsilon(1e-14));
      CHECK(*p.blob_b == doctest::Approx(*base.blob_b).epsilon(1e-14));
    }
  }

  TEST_CASE("single image profile equals that image's metrics") {
    TempDir dir("single");
    save_pnm(noise_image(16, 16, 9), dir / "x.pgm");
    const auto p = dataset_complexity("one", {DatasetEntry{dir / "x.pgm", std::nullopt}}).profile;
    CHECK(p.jpeg_j == jpeg_complexity(noise_image(16, 16, 9)));
    CHECK(*p.edge == edge_complexity(noise_image(16, 16, 9)));
    CHECK(*p.energy == signal_energy(noise_image(16, 16, 9)));
  }

  TEST_CASE("empty dataset and missing masks") {
    TempDir dir("errors");
    std::filesystem::create_directories(dir / "img");
    write_text(dir / "m.json", R"({"name":"e","images_dir":"img","images_glob":"*.pgm","masks_dir":null,"mask_suffix":null})");
    try {
      dataset_complexity(load_manifest(dir / "m.json"));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kEmptyInput);
      CHECK(std::string(e.what()).find("empty dataset") != std::string::npos);
    }
    save_pnm(constant_image(8, 8, 1), dir / "img/cell7.pgm");
    std::filesystem::create_directories(dir / "masks");
    write_text(dir / "m2.json", R"({"name":"e","images_dir":"img","images_glob":"*.pgm","masks_dir":"masks","mask_suffix":null})");
    try {
      dataset_complexity(load_manifest(dir / "m2.json"));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kManifest);
      CHECK(std::string(e.what()).find("cell7") != std::string::npos);
    }
  }

  TEST_CASE("RGB inputs are converted to gray first") {
    TempDir dir("rgb");
    RasterImage rgb(16, 16, 3);
    for (std::size_t i = 0; i < rgb.data().size(); ++i) rgb.data()[i] = static_cast<std::uint8_t>(i * 7);
    save_pnm(rgb, dir / "c.ppm");
    const auto m = measure_image(DatasetEntry{dir / "c.ppm", std::nullopt});
    CHECK(m.jpeg_j == jpeg_complexity(to_gray(rgb)));
  }
}
