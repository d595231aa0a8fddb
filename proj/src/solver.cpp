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

#include "ccplan/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccplan/error.hpp"

namespace ccplan {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_bytes(double bytes) {
  std::ostringstream out;
  out.precision(0);
  out << std::fixed << std::ceil(bytes) << " bytes";
  return out.str();
}

}  // namespace

std::string constraint_kind(const Constraint& c) {
  return std::visit(overloaded{[](const DiskBudget&) { return std::string("disk_budget"); },
                               [](const RamBudget&) { return std::string("ram_budget"); },
                               [](const AccuracyFloor&) { return std::string("accuracy_floor"); }},
                    c);
}

void validate_constraint(const Constraint& c) {
  std::visit(overloaded{[](const DiskBudget& d) {
                          if (!(d.disk_bytes > 0.0)) fail(ErrorKind::kDomain, "disk budget must be positive");
                          if (!(d.bytes_per_param > 0.0)) fail(ErrorKind::kDomain, "bytes per parameter must be positive");
                        },
                        [](const RamBudget& r) {
                          if (!(r.ram_bytes > 0.0)) fail(ErrorKind::kDomain, "memory budget must be positive");
                          if (!(r.bytes_per_param > 0.0)) fail(ErrorKind::kDomain, "bytes per parameter must be positive");
                        },
                        [](const AccuracyFloor& a) {
                          if (!(a.rel_acc_floor > 0.0 && a.rel_acc_floor < 1.0)) {
                            fail(ErrorKind::kDomain, "relative accuracy floor must lie in (0, 1)");
                          }
                        }},
             c);
}

DiskSolution alpha_for_disk_budget(std::uint64_t theta, const DiskBudget& budget) {
  validate_constraint(budget);
  if (theta < 1) fail(ErrorKind::kDomain, "base parameter count must be >= 1");
  const double target = std::floor(budget.disk_bytes / budget.bytes_per_param);
  if (target < 1.0) fail(ErrorKind::kBudgetTooSmall, "disk budget holds no parameter at the given precision");
  DiskSolution s;
  s.theta_target = static_cast<std::uint64_t>(target);
  s.alpha = std::min(1.0, std::sqrt(target / static_cast<double>(theta)));
  return s;
}

RamSolution alpha_for_ram_budget(const ArchSpec& arch, const RamBudget& budget, const SolverOptions& options) {
  validate_constraint(budget);
  const ParamAccount acc = param_count(arch, options.accounting);
  RamSolution s;
  s.total_base_bytes =
      static_cast<double>(acc.activation_bytes) + static_cast<double>(acc.theta) * budget.bytes_per_param;
  s.alpha = std::min(1.0, budget.ram_bytes / s.total_base_bytes);
  if (s.alpha < options.alpha_min) {
    fail(ErrorKind::kInfeasibleBudget, "memory budget infeasible; minimal feasible budget is about " +
                                           format_bytes(options.alpha_min * s.total_base_bytes));
  }
  return s;
}

AccuracySolution alpha_for_accuracy(double log10_theta, double complexity, const DegradationModel& model,
                                    double floor, const SolverOptions& options) {
  if (!(floor > 0.0 && floor < 1.0)) fail(ErrorKind::kDomain, "relative accuracy floor must lie in (0, 1)");
  AccuracySolution s;
  s.slope = model.slope_at(complexity);
  if (!std::isfinite(s.slope)) fail(ErrorKind::kInvalidModel, "degradation model slope is not finite");
  if (s.slope < -options.slope_min) {
    fail(ErrorKind::kInvalidModel, "degradation model predicts an accuracy gain from compression (slope " +
                                       std::to_string(s.slope) + ")");
  }
  if (s.slope <= options.slope_min) {
    s.alpha = options.alpha_min;
    s.log10_theta_target = log10_theta + 2.0 * std::log10(options.alpha_min);
    s.clamped = true;
    return s;
  }
  const double drop = (1.0 - floor) / s.slope;
  s.log10_theta_target = log10_theta - drop;
  s.alpha = std::pow(10.0, (s.log10_theta_target - log10_theta) / 2.0);
  s.clamped = s.alpha < options.alpha_min;
  return s;
}

double predict_rel_acc(double log10_theta_base, double log10_theta_new, double complexity,
                       const DegradationModel& model) {
  if (log10_theta_new > log10_theta_base) {
    fail(ErrorKind::kDomain, "compressed network cannot be larger than the base network");
  }
  return std::max(0.0, 1.0 - model.slope_at(complexity) * (log10_theta_base - log10_theta_new));
}

SnapResult snap_alpha(double alpha, const std::vector<double>& grid, SnapMode mode) {
  if (mode == SnapMode::kNone) return {alpha, false};
  if (grid.empty()) fail(ErrorKind::kConfiguration, "alpha grid is empty");
  const double top = *std::max_element(grid.begin(), grid.end());
  if (alpha > top) return {top, true};
  double best = top;
  for (const double g : grid) {
    if (g >= alpha && g < best) best = g;
  }
  return {best, false};
}

namespace {

struct Realized {
  ArchSpec arch;
  ParamAccount account;
};

Realized realize(const ArchSpec& arch, double alpha, Rounding rounding, const AccountingOptions& acct) {
  Realized r{scale_arch(arch, alpha, rounding), {}};
  r.account = param_count(r.arch, acct);
  return r;
}

double memory_bytes(const ParamAccount& acc, double bytes_per_param) {
  return static_cast<double>(acc.activation_bytes) + static_cast<double>(acc.theta) * bytes_per_param;
}

}  // namespace

CompressionPlan build_plan(const PlanInputs& inputs) {
  validate_constraint(inputs.constraint);
  const SolverOptions& opt = inputs.options;
  if (!(opt.alpha_min > 0.0 && opt.alpha_min <= 1.0)) fail(ErrorKind::kConfiguration, "alpha_min must lie in (0, 1]");

  const ArchSpec arch = resolve_arch(inputs.arch);
  const ParamAccount base = param_count(arch, opt.accounting);

  CompressionPlan plan;
  plan.architecture = arch.name;
  plan.constraint = constraint_kind(inputs.constraint);
  plan.theta_base = static_cast<double>(base.theta);
  plan.log10_theta_base = base.log10_theta;
  if (inputs.profile) plan.dataset = inputs.profile->dataset_name;
  if (inputs.model && inputs.profile) plan.complexity = model_complexity(*inputs.model, *inputs.profile);

  const bool accuracy = std::holds_alternative<AccuracyFloor>(inputs.constraint);
  if (accuracy && !plan.complexity) {
    fail(ErrorKind::kConfiguration, "an accuracy floor needs both a degradation model and a complexity profile");
  }

  // Budget check of a realized account; empty for accuracy floors.
  std::optional<double> budget_bytes;
  double bytes_per_param = 0.0;
  bool disk = false;

  if (const auto* d = std::get_if<DiskBudget>(&inputs.constraint)) {
    const DiskSolution s = alpha_for_disk_budget(base.theta, *d);
    plan.alpha_continuous = s.alpha;
    plan.theta_target = static_cast<double>(s.theta_target);
    plan.log10_theta_target = std::log10(plan.theta_target);
    budget_bytes = d->disk_bytes;
    bytes_per_param = d->bytes_per_param;
    disk = true;
  } else if (const auto* r = std::get_if<RamBudget>(&inputs.constraint)) {
    const RamSolution s = alpha_for_ram_budget(arch, *r, opt);
    plan.alpha_continuous = s.alpha;
    plan.log10_theta_target = base.log10_theta + 2.0 * std::log10(s.alpha);
    plan.theta_target = std::pow(10.0, plan.log10_theta_target);
    budget_bytes = r->ram_bytes;
    bytes_per_param = r->bytes_per_param;
  } else {
    const auto& a = std::get<AccuracyFloor>(inputs.constraint);
    const AccuracySolution s = alpha_for_accuracy(base.log10_theta, *plan.complexity, *inputs.model,
                                                  a.rel_acc_floor, opt);
    plan.alpha_continuous = s.alpha;
    plan.log10_theta_target = s.log10_theta_target;
    plan.theta_target = std::pow(10.0, s.log10_theta_target);
    plan.clamped = s.clamped;
  }

  const SnapResult snapped = snap_alpha(plan.alpha_continuous, opt.grid, opt.snap);
  double alpha = std::clamp(snapped.alpha, opt.alpha_min, 1.0);
  if (snapped.clamped || alpha != snapped.alpha) plan.clamped = true;

  auto fits = [&](const ParamAccount& acc) {
    if (!budget_bytes) return true;
    const double used = disk ? static_cast<double>(acc.theta) * bytes_per_param : memory_bytes(acc, bytes_per_param);
    return used <= *budget_bytes;
  };

  Rounding rounding = opt.rounding;
  Realized best = realize(arch, alpha, rounding, opt.accounting);
  if (!fits(best.account) && rounding != Rounding::kFloor) {
    rounding = Rounding::kFloor;
    best = realize(arch, alpha, rounding, opt.accounting);
  }
  if (!fits(best.account)) {
    // Fixed-width layers make theta shrink slower than alpha^2; search for the
    // largest alpha whose floor-rounded network still fits.
    Realized low = realize(arch, opt.alpha_min, Rounding::kFloor, opt.accounting);
    if (!fits(low.account)) {
      const double needed = disk ? static_cast<double>(low.account.theta) * bytes_per_param
                                 : memory_bytes(low.account, bytes_per_param);
      fail(ErrorKind::kInfeasibleBudget,
           "budget infeasible at alpha_min; minimal feasible budget is " + format_bytes(needed));
    }
    double lo = opt.alpha_min;
    double hi = alpha;
    for (int i = 0; i < 60 && hi - lo > 1e-12; ++i) {
      const double mid = 0.5 * (lo + hi);
      Realized r = realize(arch, mid, Rounding::kFloor, opt.accounting);
      if (fits(r.account)) {
        lo = mid;
        low = std::move(r);
      } else {
        hi = mid;
      }
    }
    alpha = lo;
    best = std::move(low);
    plan.budget_search = true;
  }

  plan.alpha_applied = alpha;
  plan.rounding = rounding;
  plan.theta_realized = best.account.theta;
  plan.log10_theta_realized = best.account.log10_theta;
  plan.memory_bytes_realized = static_cast<std::uint64_t>(
      memory_bytes(best.account, bytes_per_param > 0.0 ? bytes_per_param : 4.0));
  if (plan.complexity) {
    plan.predicted_rel_acc = predict_rel_acc(base.log10_theta, plan.log10_theta_realized, *plan.complexity,
                                             *inputs.model);
  }
  const ReductionRatios ratios = reduction_ratios(base, best.account);
  plan.pr = ratios.pr;
  plan.lr_proxy = ratios.lr_proxy;
  plan.scaled_arch = std::move(best.arch);
  return plan;
}

CompressionPlan epsilon_check(const PlanInputs& inputs, const CompressionPlan& plan, double epsilon) {
  if (epsilon < 0.0) fail(ErrorKind::kDomain, "epsilon must be non-negative");
  if (epsilon == 0.0) return plan;
  const SolverOptions& opt = inputs.options;
  const double alpha = plan.alpha_applied - epsilon;
  if (alpha < opt.alpha_min - 1e-12) {
    fail(ErrorKind::kInfeasibleEpsilon, "alpha - epsilon falls below alpha_min");
  }
  const ArchSpec arch = resolve_arch(inputs.arch);
  const ParamAccount base = param_count(arch, opt.accounting);
  const Realized r = realize(arch, alpha, plan.rounding, opt.accounting);

  CompressionPlan sib = plan;
  sib.alpha_continuous = alpha;
  sib.alpha_applied = alpha;
  sib.log10_theta_target = base.log10_theta + 2.0 * std::log10(alpha);
  sib.theta_target = std::pow(10.0, sib.log10_theta_target);
  sib.theta_realized = r.account.theta;
  sib.log10_theta_realized = r.account.log10_theta;
  sib.clamped = false;
  sib.budget_search = false;
  double bpp = 4.0;
  if (const auto* d = std::get_if<DiskBudget>(&inputs.constraint)) bpp = d->bytes_per_param;
  if (const auto* m = std::get_if<RamBudget>(&inputs.constraint)) bpp = m->bytes_per_param;
  sib.memory_bytes_realized = static_cast<std::uint64_t>(memory_bytes(r.account, bpp));
  if (plan.complexity && inputs.model) {
    sib.predicted_rel_acc = predict_rel_acc(base.log10_theta, sib.log10_theta_realized, *plan.complexity,
                                            *inputs.model);
  }
  const ReductionRatios ratios = reduction_ratios(base, r.account);
  sib.pr = ratios.pr;
  sib.lr_proxy = ratios.lr_proxy;
  sib.scaled_arch = r.arch;
  return sib;
}

}  // namespace ccplan
