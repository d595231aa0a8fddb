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

#include <cmath>
#include <random>
#include <vector>

#include "ccplan/error.hpp"
#include "ccplan/fixtures.hpp"
#include "ccplan/serialize.hpp"
#include "ccplan/solver.hpp"
#include "doctest.h"

using namespace ccplan;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::kIo;
}

DegradationModel model(double lambda, double delta) {
  DegradationModel m;
  m.architecture = "test";
  m.lambda = lambda;
  m.delta = delta;
  return m;
}

PlanInputs accuracy_inputs(const char* arch, const char* dataset, double floor) {
  PlanInputs in;
  in.arch = preset(arch);
  in.profile = fixture_profile(dataset);
  in.model = fixture_model(arch, AccuracyMetric::kF1);
  in.constraint = AccuracyFloor{floor};
  return in;
}

}  // namespace

TEST_SUITE("alpha_for_disk_budget") {
  TEST_CASE("one megabyte at eight bytes per weight") {
    const DiskSolution s = alpha_for_disk_budget(31023808, DiskBudget{1e6, 8});
    CHECK(s.theta_target == 125000);
    CHECK(std::abs(std::log10(125000.0) - 5.0969) <= 0.001);
    CHECK(s.alpha == doctest::Approx(std::sqrt(125000.0 / 31023808.0)).epsilon(1e-15));
    CHECK(std::abs(s.alpha - 0.0635) <= 0.0005);
  }
  TEST_CASE("generous budget and square-root law") {
    CHECK(alpha_for_disk_budget(1000, DiskBudget{4000, 4}).alpha == 1.0);
    CHECK(alpha_for_disk_budget(1000, DiskBudget{1e9, 4}).alpha == 1.0);
    CHECK(alpha_for_disk_budget(4000, DiskBudget{4000, 4}).alpha == 0.5);
  }
  TEST_CASE("budget below one weight") {
    CHECK(kind_of([] { alpha_for_disk_budget(1000, DiskBudget{3, 4}); }) == ErrorKind::kBudgetTooSmall);
    CHECK(kind_of([] { alpha_for_disk_budget(1000, DiskBudget{0, 4}); }) == ErrorKind::kDomain);
  }
}

TEST_SUITE("alpha_for_ram_budget") {
  const ArchSpec unet = preset("unet");
  const ParamAccount acc = param_count(unet);
  const double total = static_cast<double>(acc.activation_bytes) + 4.0 * static_cast<double>(acc.theta);

  TEST_CASE("identity and linear law") {
    CHECK(alpha_for_ram_budget(unet, RamBudget{total, 4}).alpha == 1.0);
    CHECK(alpha_for_ram_budget(unet, RamBudget{total / 2, 4}).alpha == doctest::Approx(0.5).epsilon(1e-15));
  }
  TEST_CASE("total base bytes from the accounting oracle") {
    // 922,746,880 activation bytes + 4 x 31,023,808 weights.
    const RamSolution s = alpha_for_ram_budget(unet, RamBudget{5e8, 4});
    CHECK(s.total_base_bytes == 922746880.0 + 4.0 * 31023808.0);
    CHECK(s.alpha == doctest::Approx(5e8 / 1046842112.0).epsilon(1e-15));
  }
  TEST_CASE("infeasible below alpha_min names the minimal budget") {
    try {
      alpha_for_ram_budget(unet, RamBudget{1e6, 4});
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInfeasibleBudget);
      CHECK(std::string(e.what()).find("minimal feasible budget") != std::string::npos);
    }
  }
}

TEST_SUITE("alpha_for_accuracy") {
  TEST_CASE("U-Net on C2DH-U373") {
    const auto s = alpha_for_accuracy(7.492, 0.1473, model(0.411, -0.037), 0.95);
    CHECK(s.slope == doctest::Approx(0.0235403).epsilon(1e-6));
    CHECK(7.492 - s.log10_theta_target == doctest::Approx(2.1240).epsilon(1e-4));
    CHECK(std::abs(s.log10_theta_target - 5.368) <= 0.001);
    CHECK(std::abs(s.alpha - 0.0867) <= 0.0005);
    CHECK_FALSE(s.clamped);
  }
  TEST_CASE("CUMedVision on C2DL-PSC") {
    const auto s = alpha_for_accuracy(6.887, 0.2296, model(0.701, -0.071), 0.95);
    CHECK(s.slope == doctest::Approx(0.0899496).epsilon(1e-6));
    CHECK(std::abs(s.log10_theta_target - 6.331) <= 0.001);
  }
  TEST_CASE("Wing Discs clamps to alpha_min") {
    PlanInputs in = accuracy_inputs("unet", "WD", 0.95);
    const CompressionPlan p = build_plan(in);
    CHECK(p.clamped);
    CHECK(p.alpha_applied == 0.03125);
    CHECK(p.pr >= 700.0);
    CHECK(p.pr <= 1100.0);
  }
  TEST_CASE("slope below the threshold is a clamp, negative slope is invalid") {
    const auto s = alpha_for_accuracy(7.0, 0.1, model(0.0, 5e-5), 0.95);
    CHECK(s.clamped);
    CHECK(s.alpha == 0.03125);
    CHECK(kind_of([] { alpha_for_accuracy(7.0, 0.1, model(0.0, -0.01), 0.95); }) == ErrorKind::kInvalidModel);
    CHECK_NOTHROW(alpha_for_accuracy(7.0, 0.1, model(0.0, -5e-5), 0.95));
    CHECK(kind_of([] { alpha_for_accuracy(7.0, 0.1, model(0.4, 0.0), 1.0); }) == ErrorKind::kDomain);
  }
}

TEST_SUITE("predict_rel_acc") {
  TEST_CASE("examples") {
    const auto m = model(0.411, -0.037);
    CHECK(predict_rel_acc(7.0, 7.0, 0.2, m) == 1.0);
    CHECK(predict_rel_acc(7.492, 5.436, 0.1473, m) == doctest::Approx(0.9516).epsilon(1e-4));
    CHECK(kind_of([&] { predict_rel_acc(6.0, 7.0, 0.2, m); }) == ErrorKind::kDomain);
    CHECK(predict_rel_acc(7.0, 0.0, 1.0, model(1.0, 0.0)) == 0.0);
  }
  TEST_CASE("inverse of the continuous solution") {
    const auto m = model(0.411, -0.037);
    const auto s = alpha_for_accuracy(7.492, 0.1473, m, 0.95);
    CHECK(std::abs(predict_rel_acc(7.492, s.log10_theta_target, 0.1473, m) - 0.95) <= 1e-12);
  }
  TEST_CASE("roundtrip over random tuples") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> lam(-1.0, 2.0), del(-0.3, 0.3), c(0.0, 1.0), fl(0.01, 0.99);
    int checked = 0;
    while (checked < 1000) {
      const auto m = model(lam(rng), del(rng));
      const double cx = c(rng);
      if (m.slope_at(cx) <= 1e-4) continue;
      const double f = fl(rng);
      const auto s = alpha_for_accuracy(7.0, cx, m, f);
      CHECK(std::abs(predict_rel_acc(7.0, s.log10_theta_target, cx, m) - f) <= 1e-12);
      ++checked;
    }
  }
}

TEST_SUITE("snap_alpha") {
  TEST_CASE("grid ceiling") {
    CHECK(snap_alpha(0.06, kAlphaGrid, SnapMode::kCeilToGrid).alpha == 0.0625);
    CHECK(snap_alpha(0.75, kAlphaGrid, SnapMode::kCeilToGrid).alpha == 0.75);
    CHECK(snap_alpha(0.03, kAlphaGrid, SnapMode::kCeilToGrid).alpha == 0.03125);
    const auto over = snap_alpha(1.2, kAlphaGrid, SnapMode::kCeilToGrid);
    CHECK(over.alpha == 1.0);
    CHECK(over.clamped);
    CHECK(snap_alpha(0.06, kAlphaGrid, SnapMode::kNone).alpha == 0.06);
  }
}

TEST_SUITE("build_plan") {
  TEST_CASE("accuracy plan for U-Net on C2DH-U373") {
    const CompressionPlan p = build_plan(accuracy_inputs("unet", "CU", 0.95));
    CHECK(std::abs(p.log10_theta_realized - 5.436) <= 0.12);
    CHECK(*p.predicted_rel_acc >= 0.95);
    CHECK(p.theta_realized == param_count(p.scaled_arch).theta);
    CHECK(p.theta_realized >= p.theta_target);
    CHECK(p.alpha_applied >= 0.03125);
    CHECK(p.alpha_applied <= 1.0);
    CHECK(*p.predicted_rel_acc ==
          predict_rel_acc(p.log10_theta_base, p.log10_theta_realized, *p.complexity, fixture_model("unet", AccuracyMetric::kF1)));
    CHECK(p.dataset == "c2dh-u373");
    CHECK(p.constraint == "accuracy_floor");
  }

  TEST_CASE("disk plan for U-Net at one megabyte") {
    PlanInputs in;
    in.arch = preset("unet");
    in.constraint = DiskBudget{1e6, 8};
    const CompressionPlan p = build_plan(in);
    CHECK(std::abs(p.log10_theta_target - 5.0969) <= 0.001);
    CHECK(p.theta_realized * 8.0 <= 1e6);
    CHECK(p.rounding == Rounding::kFloor);
  }

  TEST_CASE("budget safety across many disk and ram budgets") {
    const ArchSpec unet = preset("unet");
    for (double mb : {0.5, 1.0, 2.0, 3.3, 10.0, 50.0, 200.0}) {
      PlanInputs in;
      in.arch = unet;
      in.constraint = DiskBudget{mb * 1e6, 4};
      const CompressionPlan p = build_plan(in);
      CHECK(p.theta_realized * 4.0 <= mb * 1e6);
    }
    for (double mb : {40.0, 100.0, 333.0, 800.0, 2000.0}) {
      PlanInputs in;
      in.arch = unet;
      in.constraint = RamBudget{mb * 1e6, 4};
      const CompressionPlan p = build_plan(in);
      CHECK(static_cast<double>(p.memory_bytes_realized) <= mb * 1e6);
    }
  }

  TEST_CASE("infeasible budgets") {
    PlanInputs in;
    in.arch = preset("unet");
    in.constraint = DiskBudget{100.0, 4};
    CHECK(kind_of([&] { build_plan(in); }) == ErrorKind::kInfeasibleBudget);
    in.constraint = DiskBudget{2.0, 4};
    CHECK(kind_of([&] { build_plan(in); }) == ErrorKind::kBudgetTooSmall);
  }

  TEST_CASE("a higher floor never shrinks the network") {
    double prev = 0.0;
    for (double floor : {0.5, 0.8, 0.9, 0.95, 0.97, 0.99, 0.995}) {
      const double a = build_plan(accuracy_inputs("unet", "CP", floor)).alpha_applied;
      CHECK(a >= prev);
      prev = a;
    }
  }

  TEST_CASE("a smaller budget never increases alpha") {
    double prev = 2.0;
    for (double mb : {200.0, 50.0, 10.0, 3.0, 1.0, 0.3}) {
      PlanInputs in;
      in.arch = preset("fcn");
      in.constraint = DiskBudget{mb * 1e6, 4};
      const double a = build_plan(in).alpha_applied;
      CHECK(a <= prev);
      prev = a;
    }
    prev = 2.0;
    for (double mb : {2000.0, 900.0, 400.0, 120.0, 50.0}) {
      PlanInputs in;
      in.arch = preset("unet");
      in.constraint = RamBudget{mb * 1e6, 4};
      const double a = build_plan(in).alpha_applied;
      CHECK(a <= prev);
      prev = a;
    }
  }

  TEST_CASE("higher complexity keeps more width") {
    const auto m = fixture_model("cumedvision", AccuracyMetric::kF1);
    double prev = 0.0;
    for (double c = 0.15; c <= 1.0; c += 0.05) {
      ComplexityProfile p;
      p.dataset_name = "synthetic";
      p.jpeg_j = c;
      PlanInputs in;
      in.arch = preset("cumedvision");
      in.profile = p;
      in.model = m;
      in.constraint = AccuracyFloor{0.9};
      const double a = build_plan(in).alpha_applied;
      CHECK(a >= prev);
      prev = a;
    }
  }

  TEST_CASE("identical inputs give identical plans") {
    const auto a = plan_to_json(build_plan(accuracy_inputs("fcn", "CP", 0.95))).dump();
    const auto b = plan_to_json(build_plan(accuracy_inputs("fcn", "CP", 0.95))).dump();
    CHECK(a == b);
  }

  TEST_CASE("accuracy floor without a profile is a configuration error") {
    PlanInputs in = accuracy_inputs("unet", "CU", 0.95);
    in.profile.reset();
    CHECK(kind_of([&] { build_plan(in); }) == ErrorKind::kConfiguration);
    PlanInputs iu = accuracy_inputs("unet", "CU", 0.95);
    iu.model = fixture_model("unet", AccuracyMetric::kIU);
    CHECK(kind_of([&] { build_plan(iu); }) == ErrorKind::kConfiguration);
  }

  TEST_CASE("IU model with omega uses JB") {
    PlanInputs in = accuracy_inputs("unet", "CP", 0.95);
    in.model = fixture_model("unet", AccuracyMetric::kIU);
    in.model->omega = 0.7;
    const CompressionPlan p = build_plan(in);
    CHECK(*p.complexity == doctest::Approx(0.7 * 0.2296 + 0.3 * 0.3066));
    CHECK(*p.predicted_rel_acc >= 0.95);
  }

  TEST_CASE("grid snapping") {
    PlanInputs in = accuracy_inputs("unet", "CU", 0.95);
    in.options.snap = SnapMode::kCeilToGrid;
    CHECK(build_plan(in).alpha_applied == 0.125);
  }
}

TEST_SUITE("epsilon_check") {
  TEST_CASE("sibling of the U-Net plan drops below the floor") {
    const PlanInputs in = accuracy_inputs("unet", "CU", 0.95);
    const CompressionPlan p = build_plan(in);
    const CompressionPlan s = epsilon_check(in, p);
    CHECK(s.alpha_applied == doctest::Approx(p.alpha_applied - 1.0 / 64).epsilon(1e-15));
    CHECK(std::abs(s.alpha_applied - 0.07108) <= 0.0005);
    CHECK(*s.predicted_rel_acc < 0.95);
    CHECK(s.theta_realized == param_count(s.scaled_arch).theta);
  }
  TEST_CASE("zero epsilon is the identity; alpha_min has no sibling") {
    const PlanInputs in = accuracy_inputs("unet", "CU", 0.95);
    const CompressionPlan p = build_plan(in);
    CHECK(plan_to_json(epsilon_check(in, p, 0.0)) == plan_to_json(p));
    const PlanInputs wd = accuracy_inputs("unet", "WD", 0.95);
    const CompressionPlan c = build_plan(wd);
    CHECK(kind_of([&] { epsilon_check(wd, c); }) == ErrorKind::kInfeasibleEpsilon);
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("model and profile round-trip") {
    for (const auto& m : paper_fixture_models()) CHECK(model_from_json(model_to_json(m)) == m);
    auto p = fixture_profile("GL");
    p.energy = 0.3;
    p.apply_omega(0.25);
    CHECK(profile_from_json(profile_to_json(p)) == p);
    const auto j = profile_to_json(fixture_profile("LN"));
    for (const char* key : {"energy", "edge", "jpeg_j", "blob_b", "jb", "image_count"}) CHECK(j.contains(key));
  }
  TEST_CASE("plan round-trip") {
    const CompressionPlan p = build_plan(accuracy_inputs("cumedvision", "CU", 0.95));
    CHECK(plan_to_json(plan_from_json(plan_to_json(p))) == plan_to_json(p));
  }
}
