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

// Fitting the linear degradation model: relative accuracy falls linearly in
// log10(theta) for each dataset, and the per-dataset rate is itself linear in
// image complexity.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccplan/complexity.hpp"

namespace ccplan {

enum class AccuracyMetric { kF1, kIU };
enum class ComplexityKind { kJ, kJB };
enum class ModelSource { kFitted, kPaperFixture };

std::string_view to_string(AccuracyMetric m);
std::string_view to_string(ComplexityKind k);
std::string_view to_string(ModelSource s);
AccuracyMetric parse_metric(std::string_view text);
ComplexityKind parse_complexity_kind(std::string_view text);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

/// Throws kInsufficientData for < 2 points, kDegenerateRegression when all x
/// coincide. r2 is 1 when the fit is exact (including constant y).
LineFit fit_line(std::span<const Point> points);

struct CalibrationRow {
  std::string dataset;
  AccuracyMetric metric = AccuracyMetric::kF1;
  double log10_theta = 0.0;
  double rel_acc = 1.0;
};

struct CalibrationTable {
  std::vector<CalibrationRow> rows;
};

/// CSV with header `dataset,metric,log10_theta,rel_acc`.
CalibrationTable load_calibration_csv(const std::filesystem::path& path);
CalibrationTable parse_calibration_csv(std::string_view text, const std::string& label = "calibration csv");
std::string format_calibration_csv(const CalibrationTable& table);

struct SlopeFit {
  double slope = 0.0;  // degradation per decade of parameters
  double r2 = 1.0;
};

/// OLS slope of rel_acc on log10_theta; rel_acc ~ 1 - slope*(log_base - log).
SlopeFit fit_dataset_slope(std::span<const Point> points);

struct DegradationModel {
  std::string architecture;
  AccuracyMetric metric = AccuracyMetric::kF1;
  ComplexityKind complexity_kind = ComplexityKind::kJ;
  double lambda = 0.0;
  double delta = 0.0;
  std::optional<double> omega;
  std::optional<double> r2;
  ModelSource source = ModelSource::kFitted;

  /// lambda * complexity + delta.
  double slope_at(double complexity) const { return lambda * complexity + delta; }

  friend bool operator==(const DegradationModel&, const DegradationModel&) = default;
};

struct ComplexitySlope {
  double complexity = 0.0;
  double slope = 0.0;
};

/// OLS of slope on complexity. Returns architecture/metric-free core fields.
DegradationModel fit_lambda_delta(std::span<const ComplexitySlope> pairs);

struct OmegaFit {
  double omega = 1.0;
  double lambda = 0.0;
  double delta = 0.0;
  double r2 = 0.0;
};

/// Grid search omega in {0, step, ..., 1} maximizing r2 of slope vs JB; ties
/// go to the smallest omega. Throws kMissingMask if a profile lacks blob_b.
OmegaFit fit_omega(std::span<const ComplexityProfile> profiles, std::span<const double> slopes,
                   double step = 0.01);

/// Min-max normalization to [0, 1].
std::vector<double> normalize_profiles(std::span<const double> values);

/// The six published (architecture, metric) models.
std::vector<DegradationModel> paper_fixture_models();

/// Lookup by architecture ("unet", "fcn", "cumedvision") and metric.
DegradationModel fixture_model(std::string_view architecture, AccuracyMetric metric);

/// Complexity value the model expects from this profile: J for J models; for
/// JB models the blend at model.omega, or the profile's stored jb.
double model_complexity(const DegradationModel& model, const ComplexityProfile& profile);

}  // namespace ccplan
