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

#include "ccplan/error.hpp"

namespace ccplan {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDecode: return "decode error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kManifest: return "manifest error";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kLookup: return "lookup error";
    case ErrorKind::kDegenerateRegression: return "degenerate regression";
    case ErrorKind::kInsufficientData: return "insufficient data";
    case ErrorKind::kMissingMask: return "missing mask";
    case ErrorKind::kBudgetTooSmall: return "budget too small";
    case ErrorKind::kInfeasibleBudget: return "infeasible budget";
    case ErrorKind::kInvalidModel: return "invalid model";
    case ErrorKind::kInfeasibleEpsilon: return "infeasible epsilon";
    case ErrorKind::kConfiguration: return "configuration error";
    case ErrorKind::kIo: return "io error";
  }
  return "error";
}

}  // namespace ccplan
