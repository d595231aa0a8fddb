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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ccplan/arch.hpp"
#include "ccplan/calibrate.hpp"
#include "ccplan/complexity.hpp"

namespace ccplan::cli {

/// Exit codes are a stable scripting contract.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kCalibration = 3,
  kInfeasible = 4,
};

/// Runs one command (`args` excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1MB" = 10^6, "1MiB" = 2^20; K/M/G with optional B, i for binary, plain
/// numbers are bytes. Throws kConfiguration.
double parse_size(std::string_view text);

/// Value of CCNET_THREADS (0 = auto); unset or malformed gives 0.
unsigned threads_from_env();

/// "fixtures:<name>" or a path to an arch JSON; bare preset names also work
/// when no such file exists.
ArchSpec resolve_arch_arg(const std::string& arg);
/// "fixtures:<arch>-<f1|iu>" or a model JSON path.
DegradationModel resolve_model_arg(const std::string& arg);
/// "fixtures:<dataset>", "fixtures:table1", "fixtures:train" or a profile path.
std::vector<ComplexityProfile> resolve_profile_arg(const std::string& arg);

/// Writes `content` unless an identical file exists. A differing file is only
/// replaced with `force`; otherwise throws kIo. Parent directories are created.
void write_output(const std::filesystem::path& path, const std::string& content, bool force);

}  // namespace ccplan::cli
