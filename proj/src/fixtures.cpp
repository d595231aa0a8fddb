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

#include "ccplan/fixtures.hpp"

#include <cctype>

#include "ccplan/error.hpp"

namespace ccplan {

namespace {

DatasetFixture make(const char* id, const char* code, const char* title, int size, bool train, double j,
                    double b) {
  DatasetFixture f;
  f.id = id;
  f.code = code;
  f.title = title;
  f.size = size;
  f.train_set = train;
  f.profile.dataset_name = id;
  f.profile.image_count = static_cast<std::size_t>(size);
  f.profile.jpeg_j = j;
  f.profile.blob_b = b;
  return f;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const std::vector<DatasetFixture>& dataset_fixtures() {
  static const std::vector<DatasetFixture> fixtures = {
      make("glands", "GL", "Glands", 165, true, 0.2401, 0.5711),
      make("lymph-nodes", "LN", "Lymph Nodes", 74, true, 0.2445, 0.0715),
      make("melanoma", "ME", "Melanoma", 2750, true, 0.1505, 0.3055),
      make("c2dh-hela", "CH", "C2DH-HeLa", 20, true, 0.1403, 0.4607),
      make("wing-discs", "WD", "Wing Discs", 996, true, 0.0925, 0.1348),
      make("c2dh-u373", "CU", "C2DH-U373", 34, false, 0.1473, 0.0699),
      make("c2dl-psc", "CP", "C2DL-PSC", 4, false, 0.2296, 0.3066),
  };
  return fixtures;
}

std::vector<ComplexityProfile> train_set_profiles() {
  std::vector<ComplexityProfile> out;
  for (const auto& f : dataset_fixtures()) {
    if (f.train_set) out.push_back(f.profile);
  }
  return out;
}

std::vector<ComplexityProfile> reference_profiles() {
  std::vector<ComplexityProfile> out;
  for (const auto& f : dataset_fixtures()) out.push_back(f.profile);
  return out;
}

ComplexityProfile fixture_profile(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& f : dataset_fixtures()) {
    if (f.id == key || lower(f.code) == key) return f.profile;
  }
  fail(ErrorKind::kLookup, "unknown dataset fixture '" + std::string(name) + "'");
}

}  // namespace ccplan
