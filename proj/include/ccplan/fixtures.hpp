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

#include <string>
#include <string_view>
#include <vector>

#include "ccplan/complexity.hpp"

namespace ccplan {

/// Published per-dataset J and B values for the seven reference datasets
/// (energy and edge are not available for these).
struct DatasetFixture {
  std::string id;     // e.g. "c2dh-u373"
  std::string code;   // e.g. "CU"
  std::string title;  // e.g. "C2DH-U373"
  int size = 0;
  bool train_set = false;
  ComplexityProfile profile;
};

const std::vector<DatasetFixture>& dataset_fixtures();

/// The five datasets used to fit the reference models.
std::vector<ComplexityProfile> train_set_profiles();

/// All seven reference profiles, in published row order.
std::vector<ComplexityProfile> reference_profiles();

/// Lookup by id or two-letter code (case-insensitive). Throws kLookup.
ComplexityProfile fixture_profile(std::string_view name);

}  // namespace ccplan
