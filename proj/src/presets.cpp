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
#include "ccplan/error.hpp"

namespace ccplan {

namespace {

using L = LayerSpec;

// Classic U-Net: two 3x3 convs per stage, 2x2 up-convolution after each
// upsample, skip concatenation into the first conv of each decoder stage.
// 31,023,808 weights (log10 7.4917).
ArchSpec unet() {
  ArchSpec a;
  a.name = "unet";
  a.layers = {
      L::conv(64), L::conv(64), L::pool(),                      // 0-2
      L::conv(128), L::conv(128), L::pool(),                    // 3-5
      L::conv(256), L::conv(256), L::pool(),                    // 6-8
      L::conv(512), L::conv(512), L::pool(),                    // 9-11
      L::conv(1024), L::conv(1024),                             // 12-13
      L::upsample(), L::conv(512, 2), L::conv(512, 3, 10), L::conv(512),  // 14-17
      L::upsample(), L::conv(256, 2), L::conv(256, 3, 7), L::conv(256),   // 18-21
      L::upsample(), L::conv(128, 2), L::conv(128, 3, 4), L::conv(128),   // 22-25
      L::upsample(), L::conv(64, 2), L::conv(64, 3, 1), L::conv(64),      // 26-29
      L::classifier(2),                                         // 30
  };
  return resolve_arch(std::move(a));
}

// FCN-8s-like: VGG16 body, fc6/fc7 as convolutions, two 1x1 fusion convs fed
// by pool4 and pool3. Widths of fc6/fc7 (800) and the fusion convs (128) are
// chosen so the total lands on 35,637,056 weights (log10 7.5519).
ArchSpec fcn() {
  ArchSpec a;
  a.name = "fcn";
  a.layers = {
      L::conv(64), L::conv(64), L::pool(),                   // 0-2
      L::conv(128), L::conv(128), L::pool(),                 // 3-5
      L::conv(256), L::conv(256), L::conv(256), L::pool(),   // 6-9  (pool3 = 9)
      L::conv(512), L::conv(512), L::conv(512), L::pool(),   // 10-13 (pool4 = 13)
      L::conv(512), L::conv(512), L::conv(512), L::pool(),   // 14-17
      L::conv(800, 7), L::conv(800, 1),                      // 18-19 fc6, fc7
      L::upsample(), L::conv(128, 1, 13),                    // 20-21
      L::upsample(), L::conv(128, 1, 9),                     // 22-23
      L::upsample(), L::upsample(), L::upsample(),           // 24-26
      L::classifier(2),                                      // 27
  };
  return resolve_arch(std::move(a));
}

// CUMedVision-like: four-level VGG encoder, three upsampling stages each
// fusing the matching encoder output. 7,705,408 weights (log10 6.8868).
ArchSpec cumedvision() {
  ArchSpec a;
  a.name = "cumedvision";
  a.layers = {
      L::conv(64), L::conv(64), L::pool(),              // 0-2
      L::conv(128), L::conv(128), L::pool(),            // 3-5
      L::conv(256), L::conv(256), L::pool(),            // 6-8
      L::conv(512), L::conv(512),                       // 9-10
      L::upsample(), L::conv(256, 3, 7),                // 11-12
      L::upsample(), L::conv(256, 3, 4),                // 13-14
      L::upsample(), L::conv(128, 3, 1),                // 15-16
      L::classifier(2),                                 // 17
  };
  return resolve_arch(std::move(a));
}

}  // namespace

ArchSpec preset(std::string_view name) {
  if (name == "unet") return unet();
  if (name == "fcn") return fcn();
  if (name == "cumedvision") return cumedvision();
  fail(ErrorKind::kLookup, "unknown architecture preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"unet", "fcn", "cumedvision"}; }

}  // namespace ccplan
