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

#include "ccplan/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ccplan/error.hpp"

namespace ccplan {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string cls_attr(std::string_view cls) {
  return cls.empty() ? std::string() : " class=\"" + std::string(cls) + "\"";
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Linear map of a data range onto the plot area.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;
  double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

Axis padded_axis(double lo, double hi, double px_lo, double px_hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad, px_lo, px_hi};
}

void draw_frame(SvgCanvas& svg, const Axis& x, const Axis& y, std::string_view title, std::string_view xlabel,
                std::string_view ylabel) {
  svg.text(kWidth / 2.0, 24, title, "middle", 14);
  svg.line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, "#000000", "axis");
  svg.line(kLeft, kTop, kLeft, kHeight - kBottom, "#000000", "axis");
  for (int i = 0; i <= 4; ++i) {
    const double xv = x.lo + (x.hi - x.lo) * i / 4.0;
    const double yv = y.lo + (y.hi - y.lo) * i / 4.0;
    svg.text(x(xv), kHeight - kBottom + 18, tick_label(xv), "middle", 10);
    svg.text(kLeft - 6, y(yv) + 4, tick_label(yv), "end", 10);
  }
  svg.text(kWidth / 2.0, kHeight - 16, xlabel, "middle", 12);
  svg.text(16, kHeight / 2.0, ylabel, "middle", 12);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, const std::string& where) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::kFormat, where + ": invalid number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_slopes_csv(const std::vector<SlopeRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "dataset,metric,complexity,slope,r2,points\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << to_string(r.metric) << ',' << r.complexity << ',' << r.slope << ',' << r.r2 << ','
        << r.points << '\n';
  }
  return out.str();
}

std::vector<SlopeRow> parse_slopes_csv(std::string_view text, const std::string& label) {
  std::vector<SlopeRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
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
    if (!header) {
      if (row != "dataset,metric,complexity,slope,r2,points") {
        fail(ErrorKind::kFormat, where + ": expected header 'dataset,metric,complexity,slope,r2,points'");
      }
      header = true;
      continue;
    }
    if (cells.size() != 6) fail(ErrorKind::kFormat, where + ": expected 6 columns");
    SlopeRow r;
    r.dataset = std::string(cells[0]);
    r.metric = parse_metric(cells[1]);
    r.complexity = parse_number(cells[2], where);
    r.slope = parse_number(cells[3], where);
    r.r2 = parse_number(cells[4], where);
    r.points = static_cast<std::size_t>(parse_number(cells[5], where));
    rows.push_back(std::move(r));
  }
  if (!header) fail(ErrorKind::kFormat, label + ": missing header");
  return rows;
}

std::vector<SlopeRow> load_slopes_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open slopes csv");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_slopes_csv(buf.str(), path.string());
}

SvgCanvas::SvgCanvas(int width, int height) : width_(width), height_(height) {}

void SvgCanvas::rect(double x, double y, double w, double h, std::string_view fill, std::string_view cls) {
  body_ += "  <rect" + cls_attr(cls) + " x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void SvgCanvas::circle(double cx, double cy, double r, std::string_view fill, std::string_view cls) {
  body_ += "  <circle" + cls_attr(cls) + " cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) +
           "\" fill=\"" + std::string(fill) + "\"/>\n";
}

void SvgCanvas::line(double x1, double y1, double x2, double y2, std::string_view stroke, std::string_view cls) {
  body_ += "  <line" + cls_attr(cls) + " x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
           "\" y2=\"" + num(y2) + "\" stroke=\"" + std::string(stroke) + "\"/>\n";
}

void SvgCanvas::path(const std::vector<std::pair<double, double>>& points, std::string_view stroke,
                     std::string_view cls) {
  if (points.empty()) return;
  std::string d;
  for (std::size_t i = 0; i < points.size(); ++i) {
    d += (i == 0 ? "M" : " L") + num(points[i].first) + " " + num(points[i].second);
  }
  body_ += "  <path" + cls_attr(cls) + " d=\"" + d + "\" fill=\"none\" stroke=\"" + std::string(stroke) +
           "\" stroke-width=\"1.5\"/>\n";
}

void SvgCanvas::text(double x, double y, std::string_view content, std::string_view anchor, int size) {
  body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) +
           "\" font-size=\"" + std::to_string(size) + "\" font-family=\"sans-serif\">" + escape(content) + "</text>\n";
}

std::string SvgCanvas::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
         std::to_string(width_) + " " + std::to_string(height_) + "\">\n  <rect x=\"0\" y=\"0\" width=\"" +
         std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" fill=\"#ffffff\"/>\n" + body_ +
         "</svg>\n";
}

std::string render_degradation_svg(const CalibrationTable& table, AccuracyMetric metric) {
  std::map<std::string, std::vector<Point>> groups;
  for (const auto& r : table.rows) {
    if (r.metric == metric) groups[r.dataset].push_back({r.log10_theta, r.rel_acc});
  }
  if (groups.empty()) fail(ErrorKind::kEmptyInput, "no calibration rows for metric " + std::string(to_string(metric)));
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& [_, pts] : groups) {
    for (const auto& p : pts) {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  }
  const Axis x = padded_axis(xlo, xhi, kLeft, kWidth - kRight);
  const Axis y = padded_axis(ylo, yhi, kHeight - kBottom, kTop);
  SvgCanvas svg(kWidth, kHeight);
  draw_frame(svg, x, y, "Relative " + std::string(to_string(metric)) + " vs log10(parameters)", "log10(theta)",
             "relative accuracy");
  std::size_t color = 0;
  for (const auto& [name, pts] : groups) {
    const char* c = kPalette[color++ % std::size(kPalette)];
    for (const auto& p : pts) svg.circle(x(p.x), y(p.y), 4, c, "point");
    if (pts.size() >= 2) {
      try {
        const LineFit fit = fit_line(pts);
        const auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(),
                                                  [](const Point& a, const Point& b) { return a.x < b.x; });
        svg.path({{x(mn->x), y(fit.slope * mn->x + fit.intercept)}, {x(mx->x), y(fit.slope * mx->x + fit.intercept)}},
                 c, "fit");
      } catch (const Error&) {
        // A dataset with a single distinct size has no line to draw.
      }
    }
    svg.text(kWidth - kRight - 4, kTop + 14.0 * static_cast<double>(color), name, "end", 10);
  }
  return svg.str();
}

std::string render_lambda_svg(const DegradationModel& model, const std::vector<SlopeRow>& slopes) {
  std::vector<const SlopeRow*> rows;
  for (const auto& r : slopes) {
    if (r.metric == model.metric) rows.push_back(&r);
  }
  if (rows.empty()) fail(ErrorKind::kEmptyInput, "no slopes for metric " + std::string(to_string(model.metric)));
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto* r : rows) {
    xlo = std::min(xlo, r->complexity);
    xhi = std::max(xhi, r->complexity);
    ylo = std::min({ylo, r->slope, model.slope_at(r->complexity)});
    yhi = std::max({yhi, r->slope, model.slope_at(r->complexity)});
  }
  const Axis x = padded_axis(xlo, xhi, kLeft, kWidth - kRight);
  const Axis y = padded_axis(ylo, yhi, kHeight - kBottom, kTop);
  SvgCanvas svg(kWidth, kHeight);
  draw_frame(svg, x, y,
             model.architecture + " " + std::string(to_string(model.metric)) + ": lambda=" + tick_label(model.lambda) +
                 " delta=" + tick_label(model.delta),
             std::string("complexity (") + std::string(to_string(model.complexity_kind)) + ")",
             "degradation slope");
  svg.path({{x(xlo), y(model.slope_at(xlo))}, {x(xhi), y(model.slope_at(xhi))}}, "#d62728", "regression");
  for (const auto* r : rows) {
    svg.circle(x(r->complexity), y(r->slope), 4, "#1f77b4", "point");
    svg.text(x(r->complexity) + 6, y(r->slope) - 6, r->dataset, "start", 10);
  }
  return svg.str();
}

std::string render_reduction_svg(const std::vector<CompressionPlan>& plans) {
  if (plans.empty()) fail(ErrorKind::kEmptyInput, "no plans to chart");
  std::vector<const CompressionPlan*> order;
  for (const auto& p : plans) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](const CompressionPlan* a, const CompressionPlan* b) {
    const double ca = a->complexity.value_or(INFINITY);
    const double cb = b->complexity.value_or(INFINITY);
    if (ca != cb) return ca < cb;
    return a->dataset < b->dataset;
  });
  double top = 1.0;
  for (const auto* p : order) top = std::max({top, p->pr, p->lr_proxy});
  const double decades = std::max(1.0, std::ceil(std::log10(top)));
  const Axis y{0.0, decades, kHeight - kBottom, kTop};
  SvgCanvas svg(kWidth, kHeight);
  svg.text(kWidth / 2.0, 24, "Reduction (base / compressed), ascending complexity", "middle", 14);
  svg.line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom, "#000000", "axis");
  svg.line(kLeft, kTop, kLeft, kHeight - kBottom, "#000000", "axis");
  for (int d = 0; d <= static_cast<int>(decades); ++d) {
    svg.text(kLeft - 6, y(d) + 4, tick_label(std::pow(10.0, d)) + "x", "end", 10);
  }
  const double slot = (kWidth - kRight - kLeft) / static_cast<double>(order.size());
  const double bar = slot * 0.35;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const CompressionPlan& p = *order[i];
    const double x0 = kLeft + slot * static_cast<double>(i) + slot * 0.15;
    const double pr_top = y(std::log10(std::max(1.0, p.pr)));
    const double lr_top = y(std::log10(std::max(1.0, p.lr_proxy)));
    svg.rect(x0, pr_top, bar, (kHeight - kBottom) - pr_top, "#1f77b4", "bar-pr");
    svg.rect(x0 + bar, lr_top, bar, (kHeight - kBottom) - lr_top, "#ff7f0e", "bar-lr");
    svg.text(x0 + bar, kHeight - kBottom + 16, p.dataset.empty() ? p.architecture : p.dataset, "middle", 10);
  }
  svg.rect(kWidth - kRight - 150, kTop, 10, 10, "#1f77b4");
  svg.text(kWidth - kRight - 136, kTop + 9, "parameters (PR)", "start", 10);
  svg.rect(kWidth - kRight - 150, kTop + 14, 10, 10, "#ff7f0e");
  svg.text(kWidth - kRight - 136, kTop + 23, "MACs (LR proxy)", "start", 10);
  return svg.str();
}

}  // namespace ccplan
