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

// Width-multiplier selection for three constraint scenarios:
//   disk budget      alpha = sqrt(theta* / theta), theta* = bytes / bytes_per_param
//   memory budget    alpha = budget / (activations + weights), both ~linear in alpha
//   accuracy floor   1 - floor = (lambda C + delta)(log theta - log theta*)

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccplan/arch.hpp"
#include "ccplan/calibrate.hpp"
#include "ccplan/complexity.hpp"

namespace ccplan {

/// Calibration sweep, descending.
inline const std::vector<double> kAlphaGrid = {1.0, 0.75, 0.5, 0.25, 0.1875, 0.125, 0.0625, 0.03125};

struct DiskBudget {
  double disk_bytes = 0.0;
  double bytes_per_param = 4.0;
};

struct RamBudget {
  double ram_bytes = 0.0;
  double bytes_per_param = 4.0;
};

struct AccuracyFloor {
  double rel_acc_floor = 0.95;
};

using Constraint = std::variant<DiskBudget, RamBudget, AccuracyFloor>;

std::string constraint_kind(const Constraint& c);

/// Throws kDomain for non-positive budgets or a floor outside (0, 1).
void validate_constraint(const Constraint& c);

enum class SnapMode { kNone, kCeilToGrid };

struct SolverOptions {
  double alpha_min = 0.03125;
  double slope_min = 1e-4;
  Rounding rounding = Rounding::kCeil;
  SnapMode snap = SnapMode::kNone;
  std::vector<double> grid = kAlphaGrid;
  AccountingOptions accounting;
};

struct DiskSolution {
  double alpha = 1.0;
  std::uint64_t theta_target = 0;
};

/// theta* = floor(disk_bytes / bytes_per_param); alpha = min(1, sqrt(theta*/theta)).
/// Throws kBudgetTooSmall when theta* < 1.
DiskSolution alpha_for_disk_budget(std::uint64_t theta, const DiskBudget& budget);

struct RamSolution {
  double alpha = 1.0;
  double total_base_bytes = 0.0;
};

/// alpha = min(1, ram_bytes / (activation_bytes + theta * bytes_per_param)).
/// Throws kInfeasibleBudget (naming the minimal budget) when alpha < alpha_min.
RamSolution alpha_for_ram_budget(const ArchSpec& arch, const RamBudget& budget, const SolverOptions& options = {});

struct AccuracySolution {
  double alpha = 1.0;               // continuous, unclamped
  double log10_theta_target = 0.0;  // continuous
  double slope = 0.0;
  bool clamped = false;  // slope below slope_min, or alpha below alpha_min
};

/// Throws kInvalidModel when the predicted slope is below -slope_min, kDomain
/// for a floor outside (0, 1).
AccuracySolution alpha_for_accuracy(double log10_theta, double complexity, const DegradationModel& model,
                                    double floor, const SolverOptions& options = {});

/// 1 - (lambda C + delta)(log_base - log_new), clamped below at 0.
double predict_rel_acc(double log10_theta_base, double log10_theta_new, double complexity,
                       const DegradationModel& model);

struct SnapResult {
  double alpha = 1.0;
  bool clamped = false;
};

SnapResult snap_alpha(double alpha, const std::vector<double>& grid, SnapMode mode);

struct PlanInputs {
  ArchSpec arch;
  std::optional<ComplexityProfile> profile;
  std::optional<DegradationModel> model;
  Constraint constraint = AccuracyFloor{};
  SolverOptions options;
};

struct CompressionPlan {
  std::string architecture;
  std::string dataset;
  std::string constraint;
  std::optional<double> complexity;
  double alpha_continuous = 1.0;
  double alpha_applied = 1.0;
  double theta_base = 0.0;
  double theta_target = 0.0;
  std::uint64_t theta_realized = 0;
  double log10_theta_base = 0.0;
  double log10_theta_target = 0.0;
  double log10_theta_realized = 0.0;
  std::optional<double> predicted_rel_acc;
  bool clamped = false;
  Rounding rounding = Rounding::kCeil;
  bool budget_search = false;
  std::uint64_t memory_bytes_realized = 0;  // activations + weights
  ArchSpec scaled_arch;
  double pr = 1.0;
  double lr_proxy = 1.0;
};

/// Solves alpha for the constraint, scales the architecture and accounts for
/// the result. Budget plans fall back from ceil to floor rounding (and then to
/// a search over alpha) rather than exceeding the budget.
CompressionPlan build_plan(const PlanInputs& inputs);

/// The sibling plan at alpha_applied - epsilon. Throws kInfeasibleEpsilon when
/// that drops below alpha_min.
CompressionPlan epsilon_check(const PlanInputs& inputs, const CompressionPlan& plan, double epsilon = 1.0 / 64.0);

}  // namespace ccplan
