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

// Deterministic SVG plots: fixed canvas, fixed number formatting, no
// timestamps, so output is byte-stable and diffable.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ccplan/calibrate.hpp"
#include "ccplan/solver.hpp"

namespace ccplan {

/// One per-dataset degradation fit, as written by `calibrate`.
struct SlopeRow {
  std::string dataset;
  AccuracyMetric metric = AccuracyMetric::kF1;
  double complexity = 0.0;
  double slope = 0.0;
  double r2 = 1.0;
  std::size_t points = 0;
};

/// Header `dataset,metric,complexity,slope,r2,points`.
std::string format_slopes_csv(const std::vector<SlopeRow>& rows);
std::vector<SlopeRow> parse_slopes_csv(std::string_view text, const std::string& label = "slopes csv");
std::vector<SlopeRow> load_slopes_csv(const std::filesystem::path& path);

class SvgCanvas {
 public:
  SvgCanvas(int width, int height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view cls = {});
  void circle(double cx, double cy, double r, std::string_view fill, std::string_view cls = {});
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, std::string_view cls = {});
  void path(const std::vector<std::pair<double, double>>& points, std::string_view stroke, std::string_view cls = {});
  void text(double x, double y, std::string_view content, std::string_view anchor = "start", int size = 12);

  std::string str() const;

 private:
  int width_;
  int height_;
  std::string body_;
};

/// Relative accuracy vs log10(theta) scatter with one fitted line per dataset.
std::string render_degradation_svg(const CalibrationTable& table, AccuracyMetric metric);

/// Per-dataset slope vs complexity with the model's lambda/delta line.
std::string render_lambda_svg(const DegradationModel& model, const std::vector<SlopeRow>& slopes);

/// PR and MAC-proxy LR bars per plan, ordered by ascending complexity.
std::string render_reduction_svg(const std::vector<CompressionPlan>& plans);

}  // namespace ccplan
