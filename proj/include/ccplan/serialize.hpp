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

#include <filesystem>
#include <string>

#include "ccplan/calibrate.hpp"
#include "ccplan/complexity.hpp"
#include "ccplan/solver.hpp"
#include "json.hpp"

namespace ccplan {

nlohmann::json profile_to_json(const ComplexityProfile& p);
ComplexityProfile profile_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const DegradationModel& m);
DegradationModel model_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const CompressionPlan& p);
CompressionPlan plan_from_json(const nlohmann::json& j);

/// Reads a JSON document; throws kIo / kFormat.
nlohmann::json read_json(const std::filesystem::path& path);

/// Pretty-printed with a trailing newline; stable across runs.
std::string dump_json(const nlohmann::json& j);

}  // namespace ccplan
