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

#include "ccplan/calibrate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ccplan/error.hpp"

namespace ccplan {

std::string_view to_string(AccuracyMetric m) { return m == AccuracyMetric::kF1 ? "F1" : "IU"; }
std::string_view to_string(ComplexityKind k) { return k == ComplexityKind::kJ ? "J" : "JB"; }
std::string_view to_string(ModelSource s) { return s == ModelSource::kFitted ? "fitted" : "paper_fixture"; }

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, const std::string& where) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    fail(ErrorKind::kFormat, where + ": invalid number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

AccuracyMetric parse_metric(std::string_view text) {
  const std::string u = upper(trim(text));
  if (u == "F1") return AccuracyMetric::kF1;
  if (u == "IU" || u == "IOU") return AccuracyMetric::kIU;
  fail(ErrorKind::kFormat, "unknown accuracy metric '" + std::string(text) + "'");
}

ComplexityKind parse_complexity_kind(std::string_view text) {
  const std::string u = upper(trim(text));
  if (u == "J") return ComplexityKind::kJ;
  if (u == "JB") return ComplexityKind::kJB;
  fail(ErrorKind::kFormat, "unknown complexity kind '" + std::string(text) + "'");
}

LineFit fit_line(std::span<const Point> points) {
  if (points.size() < 2) fail(ErrorKind::kInsufficientData, "regression needs at least 2 points");
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += p.x;
    sy += p.y;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.x - mx;
    const double dy = p.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double x_scale = std::max(1.0, std::abs(mx));
  if (sxx <= 1e-24 * x_scale * x_scale * n) fail(ErrorKind::kDegenerateRegression, "all regressor values are equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& p : points) {
    const double r = p.y - (fit.slope * p.x + fit.intercept);
    ss_res += r * r;
  }
  if (syy <= 0.0) {
    fit.r2 = 1.0;
  } else {
    fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

CalibrationTable parse_calibration_csv(std::string_view text, const std::string& label) {
  CalibrationTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = row.find(',', start);
      cells.push_back(trim(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    const std::string where = label + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (cells.size() != 4 || cells[0] != "dataset" || cells[1] != "metric" || cells[2] != "log10_theta" ||
          cells[3] != "rel_acc") {
        fail(ErrorKind::kFormat, where + ": expected header 'dataset,metric,log10_theta,rel_acc'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 4) fail(ErrorKind::kFormat, where + ": expected 4 columns");
    CalibrationRow r;
    r.dataset = std::string(cells[0]);
    if (r.dataset.empty()) fail(ErrorKind::kFormat, where + ": empty dataset name");
    r.metric = parse_metric(cells[1]);
    r.log10_theta = parse_double(cells[2], where);
    r.rel_acc = parse_double(cells[3], where);
    if (!(r.rel_acc > 0.0 && r.rel_acc <= 1.2)) fail(ErrorKind::kFormat, where + ": rel_acc outside (0, 1.2]");
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) fail(ErrorKind::kFormat, label + ": missing header");
  return table;
}

CalibrationTable load_calibration_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open calibration csv");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calibration_csv(buf.str(), path.string());
}

std::string format_calibration_csv(const CalibrationTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "dataset,metric,log10_theta,rel_acc\n";
  for (const auto& r : table.rows) {
    out << r.dataset << ',' << to_string(r.metric) << ',' << r.log10_theta << ',' << r.rel_acc << '\n';
  }
  return out.str();
}

SlopeFit fit_dataset_slope(std::span<const Point> points) {
  const LineFit fit = fit_line(points);
  return {fit.slope, fit.r2};
}

DegradationModel fit_lambda_delta(std::span<const ComplexitySlope> pairs) {
  std::vector<Point> pts;
  pts.reserve(pairs.size());
  for (const auto& p : pairs) pts.push_back({p.complexity, p.slope});
  const LineFit fit = fit_line(pts);
  DegradationModel m;
  m.lambda = fit.slope;
  m.delta = fit.intercept;
  m.r2 = fit.r2;
  m.source = ModelSource::kFitted;
  return m;
}

OmegaFit fit_omega(std::span<const ComplexityProfile> profiles, std::span<const double> slopes, double step) {
  if (profiles.size() != slopes.size()) fail(ErrorKind::kInsufficientData, "profiles and slopes differ in length");
  if (profiles.size() < 2) fail(ErrorKind::kInsufficientData, "omega fit needs at least 2 datasets");
  if (!(step > 0.0 && step <= 1.0)) fail(ErrorKind::kDomain, "omega grid step must lie in (0, 1]");
  for (const auto& p : profiles) {
    if (!p.blob_b) fail(ErrorKind::kMissingMask, "profile '" + p.dataset_name + "' has no blob density");
  }
  const int steps = static_cast<int>(std::lround(1.0 / step));
  constexpr double kTieTolerance = 1e-12;

  std::optional<OmegaFit> best;
  std::vector<Point> pts(profiles.size());
  for (int i = 0; i <= steps; ++i) {
    const double w = static_cast<double>(i) / steps;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
      pts[k] = {combine_jb(profiles[k].jpeg_j, *profiles[k].blob_b, w), slopes[k]};
    }
    LineFit fit;
    try {
      fit = fit_line(pts);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kDegenerateRegression) continue;
      throw;
    }
    if (!best || fit.r2 > best->r2 + kTieTolerance) best = OmegaFit{w, fit.slope, fit.intercept, fit.r2};
  }
  if (!best) fail(ErrorKind::kDegenerateRegression, "JB is constant across datasets for every omega");
  return *best;
}

std::vector<double> normalize_profiles(std::span<const double> values) {
  if (values.size() < 2) fail(ErrorKind::kInsufficientData, "normalization needs at least 2 values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) fail(ErrorKind::kDegenerateRegression, "cannot normalize: all values are equal");
  std::vector<double> out;
  out.reserve(values.size());
  for (const double v : values) out.push_back((v - *lo) / range);
  return out;
}

std::vector<DegradationModel> paper_fixture_models() {
  auto make = [](const char* arch, AccuracyMetric metric, double lambda, double delta) {
    DegradationModel m;
    m.architecture = arch;
    m.metric = metric;
    m.complexity_kind = metric == AccuracyMetric::kF1 ? ComplexityKind::kJ : ComplexityKind::kJB;
    m.lambda = lambda;
    m.delta = delta;
    m.source = ModelSource::kPaperFixture;
    return m;
  };
  return {
      make("fcn", AccuracyMetric::kF1, 0.407, -0.030),
      make("fcn", AccuracyMetric::kIU, 0.627, -0.070),
      make("unet", AccuracyMetric::kF1, 0.411, -0.037),
      make("unet", AccuracyMetric::kIU, 0.323, -0.031),
      make("cumedvision", AccuracyMetric::kF1, 0.701, -0.071),
      make("cumedvision", AccuracyMetric::kIU, 1.010, -0.129),
  };
}

DegradationModel fixture_model(std::string_view architecture, AccuracyMetric metric) {
  for (auto& m : paper_fixture_models()) {
    if (m.architecture == architecture && m.metric == metric) return m;
  }
  fail(ErrorKind::kLookup, "no fixture model for '" + std::string(architecture) + "' " + std::string(to_string(metric)));
}

double model_complexity(const DegradationModel& model, const ComplexityProfile& profile) {
  if (model.complexity_kind == ComplexityKind::kJ) return profile.jpeg_j;
  if (model.omega) {
    if (!profile.blob_b) {
      fail(ErrorKind::kConfiguration, "model needs JB but profile '" + profile.dataset_name + "' has no blob density");
    }
    return combine_jb(profile.jpeg_j, *profile.blob_b, *model.omega);
  }
  if (profile.jb) return *profile.jb;
  fail(ErrorKind::kConfiguration,
       "model needs JB but neither the model nor profile '" + profile.dataset_name + "' provides omega");
}

}  // namespace ccplan
