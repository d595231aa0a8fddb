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

#include "ccplan/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ccplan/error.hpp"
#include "ccplan/fixtures.hpp"
#include "ccplan/report.hpp"
#include "ccplan/serialize.hpp"
#include "ccplan/solver.hpp"

namespace ccplan::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kFixturePrefix = "fixtures:";

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_fixture(std::string_view arg) { return arg.substr(0, kFixturePrefix.size()) == kFixturePrefix; }

std::string fixture_name(std::string_view arg) { return std::string(arg.substr(kFixturePrefix.size())); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

}  // namespace

double parse_size(std::string_view text) {
  std::string t = lower(text);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr == t.data()) fail(ErrorKind::kConfiguration, "invalid size '" + std::string(text) + "'");
  std::string unit(ptr, static_cast<const char*>(t.data() + t.size()));
  if (!unit.empty() && unit.back() == 'b') unit.pop_back();
  static const std::map<std::string, double> kUnits = {
      {"", 1.0},        {"k", 1e3},        {"m", 1e6},         {"g", 1e9},
      {"ki", 1024.0},   {"mi", 1048576.0}, {"gi", 1073741824.0},
  };
  const auto it = kUnits.find(unit);
  if (it == kUnits.end()) fail(ErrorKind::kConfiguration, "invalid size unit in '" + std::string(text) + "'");
  if (!(value > 0.0)) fail(ErrorKind::kConfiguration, "size must be positive: '" + std::string(text) + "'");
  return value * it->second;
}

unsigned threads_from_env() {
  const char* v = std::getenv("CCNET_THREADS");
  if (v == nullptr) return 0;
  unsigned n = 0;
  const std::string_view s(v);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size()) return 0;
  return n;
}

ArchSpec resolve_arch_arg(const std::string& arg) {
  if (is_fixture(arg)) return preset(fixture_name(arg));
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return parse_arch(arg);
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return preset(arg);
  fail(ErrorKind::kIo, arg + ": no such arch file or preset");
}

DegradationModel resolve_model_arg(const std::string& arg) {
  if (is_fixture(arg)) {
    const std::string name = lower(fixture_name(arg));
    const std::size_t dash = name.rfind('-');
    if (dash == std::string::npos) fail(ErrorKind::kLookup, "fixture model must be named <arch>-<f1|iu>");
    return fixture_model(name.substr(0, dash), parse_metric(name.substr(dash + 1)));
  }
  return model_from_json(read_json(arg));
}

std::vector<ComplexityProfile> resolve_profile_arg(const std::string& arg) {
  if (is_fixture(arg)) {
    const std::string name = lower(fixture_name(arg));
    if (name == "table1" || name == "all") return reference_profiles();
    if (name == "train") return train_set_profiles();
    return {fixture_profile(name)};
  }
  return {profile_from_json(read_json(arg))};
}

void write_output(const fs::path& path, const std::string& content, bool force) {
  std::error_code ec;
  if (fs::exists(path, ec)) {
    if (read_file(path) == content) return;
    if (!force) fail(ErrorKind::kIo, path.string() + " exists with different content (use --force to overwrite)");
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, path.string() + ": cannot write file");
  out << content;
  if (!out) fail(ErrorKind::kIo, path.string() + ": write failed");
}

namespace {

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string manifest;
  std::string out = ".";
  bool per_image = false;
  bool require_masks = false;
  std::optional<double> omega;
  bool force = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const DatasetManifest manifest = load_manifest(a.manifest);
  if (a.require_masks && !manifest.masks_dir) {
    fail(ErrorKind::kManifest, "--require-masks given but manifest '" + a.manifest + "' configures no masks_dir");
  }
  DatasetAnalysis analysis = dataset_complexity(manifest, threads_from_env());
  if (a.omega) analysis.profile.apply_omega(*a.omega);

  const fs::path dir(a.out);
  write_output(dir / (manifest.name + ".profile.json"), dump_json(profile_to_json(analysis.profile)), a.force);
  if (a.per_image) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "image,width,height,energy,edge,jpeg_j,fg_pixels,mask_pixels\n";
    for (const auto& m : analysis.per_image) {
      csv << m.image.filename().string() << ',' << m.width << ',' << m.height << ',' << m.energy << ',' << m.edge
          << ',' << m.jpeg_j << ',';
      if (m.mask_pixels) csv << *m.foreground_pixels << ',' << *m.mask_pixels;
      else csv << ',';
      csv << '\n';
    }
    write_output(dir / (manifest.name + ".per_image.csv"), csv.str(), a.force);
  }
  const auto& p = analysis.profile;
  out << manifest.name << ": " << p.image_count << " images, J=" << fmt(p.jpeg_j)
      << " energy=" << fmt(*p.energy) << " edge=" << fmt(*p.edge);
  if (p.blob_b) out << " B=" << fmt(*p.blob_b);
  if (p.jb) out << " JB=" << fmt(*p.jb);
  out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::string csv;
  std::vector<std::string> profiles;
  std::string arch_name = "custom";
  std::string out = ".";
  double omega_step = 0.01;
  bool export_fixtures = false;
  bool force = false;
};

std::string model_file_name(const DegradationModel& m) {
  return m.architecture + "-" + lower(to_string(m.metric)) + ".model.json";
}

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir(a.out);
  if (a.export_fixtures) {
    if (!a.csv.empty()) {
      err << "error: --export-paper-fixtures cannot be combined with --csv\n";
      return kUsage;
    }
    for (const auto& m : paper_fixture_models()) {
      write_output(dir / model_file_name(m), dump_json(model_to_json(m)), a.force);
      out << "wrote " << (dir / model_file_name(m)).string() << "\n";
    }
    return kOk;
  }
  if (a.csv.empty()) {
    err << "error: calibrate needs --csv (or --export-paper-fixtures)\n";
    return kUsage;
  }

  // Inputs that fail to load are usage errors; anything past this point is a
  // calibration error.
  const CalibrationTable table = load_calibration_csv(a.csv);
  std::map<std::string, ComplexityProfile> profiles;
  for (const auto& arg : a.profiles) {
    for (auto& p : resolve_profile_arg(arg)) profiles[lower(p.dataset_name)] = std::move(p);
  }

  try {
    if (table.rows.empty()) fail(ErrorKind::kInsufficientData, "calibration csv has no rows");
    std::map<std::pair<AccuracyMetric, std::string>, std::vector<Point>> groups;
    for (const auto& r : table.rows) groups[{r.metric, r.dataset}].push_back({r.log10_theta, r.rel_acc});

    std::vector<SlopeRow> slope_rows;
    std::map<AccuracyMetric, std::vector<std::pair<ComplexityProfile, SlopeRow>>> by_metric;
    for (const auto& [key, pts] : groups) {
      const auto& [metric, dataset] = key;
      const auto prof = profiles.find(lower(dataset));
      if (prof == profiles.end()) fail(ErrorKind::kLookup, "no complexity profile for dataset '" + dataset + "'");
      const auto top = std::max_element(pts.begin(), pts.end(), [](const Point& p, const Point& q) { return p.x < q.x; });
      if (std::abs(top->y - 1.0) > 1e-6) {
        fail(ErrorKind::kValidation, "dataset '" + dataset + "': rel_acc at the largest network must be 1.0");
      }
      SlopeFit fit;
      try {
        fit = fit_dataset_slope(pts);
      } catch (const Error& e) {
        fail(e.kind(), "dataset '" + dataset + "' (" + std::string(to_string(metric)) + "): " + e.what());
      }
      SlopeRow row{dataset, metric, 0.0, fit.slope, fit.r2, pts.size()};
      by_metric[metric].emplace_back(prof->second, row);
    }

    for (auto& [metric, entries] : by_metric) {
      DegradationModel model;
      if (metric == AccuracyMetric::kF1) {
        std::vector<ComplexitySlope> pairs;
        for (auto& [prof, row] : entries) {
          row.complexity = prof.jpeg_j;
          pairs.push_back({prof.jpeg_j, row.slope});
        }
        model = fit_lambda_delta(pairs);
        model.complexity_kind = ComplexityKind::kJ;
      } else {
        std::vector<ComplexityProfile> profs;
        std::vector<double> slopes;
        for (const auto& [prof, row] : entries) {
          profs.push_back(prof);
          slopes.push_back(row.slope);
        }
        const OmegaFit fit = fit_omega(profs, slopes, a.omega_step);
        model.lambda = fit.lambda;
        model.delta = fit.delta;
        model.r2 = fit.r2;
        model.omega = fit.omega;
        model.complexity_kind = ComplexityKind::kJB;
        for (auto& [prof, row] : entries) row.complexity = combine_jb(prof.jpeg_j, *prof.blob_b, fit.omega);
      }
      model.architecture = a.arch_name;
      model.metric = metric;
      model.source = ModelSource::kFitted;
      write_output(dir / model_file_name(model), dump_json(model_to_json(model)), a.force);
      out << a.arch_name << " " << to_string(metric) << ": lambda=" << fmt(model.lambda, 6)
          << " delta=" << fmt(model.delta, 6);
      if (model.omega) out << " omega=" << fmt(*model.omega, 2);
      out << " r2=" << fmt(*model.r2, 6) << "\n";
      for (const auto& [prof, row] : entries) slope_rows.push_back(row);
    }
    write_output(dir / "slopes.csv", format_slopes_csv(slope_rows), a.force);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kIo) throw;
    err << "calibration error: " << e.what() << "\n";
    return kCalibration;
  }
  return kOk;
}

// ---------------------------------------------------------------- plan

struct PlanArgs {
  std::string arch;
  std::string model;
  std::string profile;
  std::string disk_budget;
  std::string ram_budget;
  std::optional<double> min_rel_f1;
  std::optional<double> min_rel_iu;
  std::optional<double> min_rel_acc;
  double bytes_per_param = 4.0;
  int bytes_per_activation = 4;
  std::string rounding = "ceil";
  std::string snap = "none";
  double alpha_min = 0.03125;
  double slope_min = 1e-4;
  bool include_bias = false;
  bool epsilon_check = false;
  double epsilon = 1.0 / 64.0;
  std::string out = ".";
  bool force = false;
};

void print_plan(std::ostream& out, const CompressionPlan& p, std::string_view label) {
  out << label << ": " << p.architecture;
  if (!p.dataset.empty()) out << " / " << p.dataset;
  out << " [" << p.constraint << "]\n"
      << "  alpha " << fmt(p.alpha_applied, 6) << " (continuous " << fmt(p.alpha_continuous, 6) << ")"
      << (p.clamped ? " clamped" : "") << ", rounding " << to_string(p.rounding)
      << (p.budget_search ? " + search" : "") << "\n"
      << "  log10 theta: base " << fmt(p.log10_theta_base) << ", target " << fmt(p.log10_theta_target)
      << ", realized " << fmt(p.log10_theta_realized) << " (" << p.theta_realized << " weights)\n"
      << "  PR " << fmt(p.pr, 2) << "x, LR proxy " << fmt(p.lr_proxy, 2) << "x";
  if (p.predicted_rel_acc) out << ", predicted relative accuracy " << fmt(*p.predicted_rel_acc);
  out << "\n";
}

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  int groups = 0;
  groups += a.disk_budget.empty() ? 0 : 1;
  groups += a.ram_budget.empty() ? 0 : 1;
  groups += a.min_rel_f1 ? 1 : 0;
  groups += a.min_rel_iu ? 1 : 0;
  groups += a.min_rel_acc ? 1 : 0;
  if (groups != 1) {
    err << "usage error: give exactly one of --disk-budget, --ram-budget, --min-rel-f1, --min-rel-iu, --min-rel-acc\n";
    return kUsage;
  }

  PlanInputs in;
  in.arch = resolve_arch_arg(a.arch);
  if (!a.model.empty()) in.model = resolve_model_arg(a.model);
  if (!a.profile.empty()) {
    auto profiles = resolve_profile_arg(a.profile);
    if (profiles.size() != 1) {
      err << "usage error: --profile must name a single dataset\n";
      return kUsage;
    }
    in.profile = std::move(profiles.front());
  }
  in.options.rounding = parse_rounding(a.rounding);
  if (a.snap == "none") in.options.snap = SnapMode::kNone;
  else if (a.snap == "ceil_to_grid") in.options.snap = SnapMode::kCeilToGrid;
  else fail(ErrorKind::kConfiguration, "unknown snap mode '" + a.snap + "'");
  in.options.alpha_min = a.alpha_min;
  in.options.slope_min = a.slope_min;
  in.options.accounting.include_bias = a.include_bias;
  in.options.accounting.bytes_per_activation = a.bytes_per_activation;

  if (!a.disk_budget.empty()) {
    in.constraint = DiskBudget{parse_size(a.disk_budget), a.bytes_per_param};
  } else if (!a.ram_budget.empty()) {
    in.constraint = RamBudget{parse_size(a.ram_budget), a.bytes_per_param};
  } else {
    const double floor = a.min_rel_f1 ? *a.min_rel_f1 : a.min_rel_iu ? *a.min_rel_iu : *a.min_rel_acc;
    if (!in.model || !in.profile) {
      err << "usage error: an accuracy floor needs --model and --profile\n";
      return kUsage;
    }
    if ((a.min_rel_f1 && in.model->metric != AccuracyMetric::kF1) ||
        (a.min_rel_iu && in.model->metric != AccuracyMetric::kIU)) {
      err << "usage error: the floor's metric does not match the model metric " << to_string(in.model->metric) << "\n";
      return kUsage;
    }
    in.constraint = AccuracyFloor{floor};
  }

  const CompressionPlan plan = build_plan(in);
  const fs::path dir(a.out);
  std::optional<CompressionPlan> sibling;
  if (a.epsilon_check) sibling = epsilon_check(in, plan, a.epsilon);

  write_output(dir / "plan.json", dump_json(plan_to_json(plan)), a.force);
  write_output(dir / "arch.scaled.json", dump_json(arch_to_json(plan.scaled_arch)), a.force);
  print_plan(out, plan, "plan");
  if (sibling) {
    write_output(dir / "plan.epsilon.json", dump_json(plan_to_json(*sibling)), a.force);
    print_plan(out, *sibling, "epsilon sibling");
  }
  return kOk;
}

// ---------------------------------------------------------------- report

struct ReportArgs {
  std::string model;
  std::string slopes;
  std::string calibration;
  std::vector<std::string> plans;
  std::string out = ".";
  bool force = false;
};

std::vector<fs::path> collect_plan_files(const std::vector<std::string>& args) {
  std::vector<fs::path> files;
  for (const auto& a : args) {
    const fs::path p(a);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        const std::string name = e.path().filename().string();
        const bool is_plan = name == "plan.json" ||
                             (name.size() > 10 && name.ends_with(".plan.json"));
        if (e.is_regular_file() && is_plan) files.push_back(e.path());
      }
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      fail(ErrorKind::kIo, a + ": no such plan file or directory");
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir(a.out);
  bool produced = false;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_output(dir / name, content, a.force);
    out << "wrote " << (dir / name).string() << "\n";
    produced = true;
  };

  if (!a.calibration.empty()) {
    const CalibrationTable table = load_calibration_csv(a.calibration);
    for (const AccuracyMetric m : {AccuracyMetric::kF1, AccuracyMetric::kIU}) {
      const bool any = std::any_of(table.rows.begin(), table.rows.end(), [m](const auto& r) { return r.metric == m; });
      if (any) emit("degradation_" + lower(to_string(m)) + ".svg", render_degradation_svg(table, m));
    }
  }
  if (!a.model.empty() || !a.slopes.empty()) {
    if (a.model.empty() || a.slopes.empty()) {
      err << "usage error: the complexity regression plot needs both --model and --slopes\n";
      return kUsage;
    }
    const DegradationModel model = resolve_model_arg(a.model);
    emit("lambda_" + model.architecture + "_" + lower(to_string(model.metric)) + ".svg",
         render_lambda_svg(model, load_slopes_csv(a.slopes)));
  }
  if (!a.plans.empty()) {
    const auto files = collect_plan_files(a.plans);
    if (files.empty()) {
      err << "usage error: empty plan set\n";
      return kUsage;
    }
    std::vector<CompressionPlan> plans;
    for (const auto& f : files) plans.push_back(plan_from_json(read_json(f)));
    emit("reduction.svg", render_reduction_svg(plans));
    std::ostringstream csv;
    csv.precision(17);
    csv << "dataset,architecture,complexity,alpha_applied,log10_theta_realized,pr,lr_proxy\n";
    std::vector<const CompressionPlan*> order;
    for (const auto& p : plans) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](const CompressionPlan* x, const CompressionPlan* y) {
      return x->complexity.value_or(INFINITY) < y->complexity.value_or(INFINITY);
    });
    for (const auto* p : order) {
      csv << p->dataset << ',' << p->architecture << ',';
      if (p->complexity) csv << *p->complexity;
      csv << ',' << p->alpha_applied << ',' << p->log10_theta_realized << ',' << p->pr << ',' << p->lr_proxy << '\n';
    }
    emit("reduction.csv", csv.str());
  }
  if (!produced) {
    err << "usage error: report needs --calibration, --model with --slopes, or --plans\n";
    return kUsage;
  }
  return kOk;
}

// ---------------------------------------------------------------- presets

struct PresetsArgs {
  std::string export_dir;
  bool force = false;
};

int cmd_presets(const PresetsArgs& a, std::ostream& out) {
  out << std::left << std::setw(14) << "name" << std::setw(12) << "theta" << std::setw(10) << "log10"
      << std::setw(16) << "MACs" << "activation bytes\n";
  for (const auto& name : preset_names()) {
    const ArchSpec arch = preset(name);
    const ParamAccount acc = param_count(arch);
    out << std::left << std::setw(14) << name << std::setw(12) << acc.theta << std::setw(10) << fmt(acc.log10_theta)
        << std::setw(16) << acc.macs << acc.activation_bytes << "\n";
    if (!a.export_dir.empty()) {
      write_output(fs::path(a.export_dir) / (name + ".arch.json"), dump_json(arch_to_json(arch)), a.force);
    }
  }
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBudgetTooSmall:
    case ErrorKind::kInfeasibleBudget:
    case ErrorKind::kInfeasibleEpsilon:
    case ErrorKind::kInvalidModel: return kInfeasible;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complexity-guided CNN width-multiplier planning"};
  app.name("ccplan");
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* sa = app.add_subcommand("analyze", "Compute a dataset complexity profile");
  sa->add_option("--manifest", analyze.manifest, "Dataset manifest JSON")->required();
  sa->add_option("--out", analyze.out, "Output directory");
  sa->add_flag("--per-image", analyze.per_image, "Also write per-image metrics CSV");
  sa->add_flag("--require-masks", analyze.require_masks, "Fail unless masks are configured");
  sa->add_option("--omega", analyze.omega, "Store JB = omega*J + (1-omega)*B in the profile");
  sa->add_flag("--force", analyze.force, "Overwrite differing outputs");

  CalibrateArgs calibrate;
  auto* sc = app.add_subcommand("calibrate", "Fit lambda/delta (and omega) from a calibration CSV");
  sc->add_option("--csv", calibrate.csv, "Calibration CSV (dataset,metric,log10_theta,rel_acc)");
  sc->add_option("--profile", calibrate.profiles, "Profile JSON or fixtures:<name|table1|train>");
  sc->add_option("--arch-name", calibrate.arch_name, "Architecture name stored in the models");
  sc->add_option("--out", calibrate.out, "Output directory");
  sc->add_option("--omega-step", calibrate.omega_step, "Grid step of the omega search");
  sc->add_flag("--export-paper-fixtures", calibrate.export_fixtures, "Write the six reference models");
  sc->add_flag("--force", calibrate.force, "Overwrite differing outputs");

  PlanArgs plan;
  auto* sp = app.add_subcommand("plan", "Solve the width multiplier for one constraint");
  sp->add_option("--arch", plan.arch, "Preset name, fixtures:<preset> or arch JSON")->required();
  sp->add_option("--model", plan.model, "Model JSON or fixtures:<arch>-<f1|iu>");
  sp->add_option("--profile", plan.profile, "Profile JSON or fixtures:<dataset>");
  sp->add_option("--disk-budget", plan.disk_budget, "Weight storage budget, e.g. 1MB");
  sp->add_option("--ram-budget", plan.ram_budget, "Activation + weight memory budget, e.g. 512MiB");
  sp->add_option("--min-rel-f1", plan.min_rel_f1, "Relative F1 floor in (0,1)");
  sp->add_option("--min-rel-iu", plan.min_rel_iu, "Relative IU floor in (0,1)");
  sp->add_option("--min-rel-acc", plan.min_rel_acc, "Relative accuracy floor for the model's metric");
  sp->add_option("--bytes-per-param", plan.bytes_per_param, "Bytes per stored weight");
  sp->add_option("--bytes-per-activation", plan.bytes_per_activation, "Bytes per activation value");
  sp->add_option("--rounding", plan.rounding, "Width rounding: ceil, floor, nearest");
  sp->add_option("--snap", plan.snap, "Alpha snapping: none, ceil_to_grid");
  sp->add_option("--alpha-min", plan.alpha_min, "Smallest multiplier");
  sp->add_option("--slope-min", plan.slope_min, "Slope below which degradation counts as negligible");
  sp->add_flag("--include-bias", plan.include_bias, "Count biases as parameters");
  sp->add_flag("--epsilon-check", plan.epsilon_check, "Also write the alpha - epsilon sibling plan");
  sp->add_option("--epsilon", plan.epsilon, "Epsilon for --epsilon-check");
  sp->add_option("--out", plan.out, "Output directory");
  sp->add_flag("--force", plan.force, "Overwrite differing outputs");

  ReportArgs report;
  auto* sr = app.add_subcommand("report", "Render SVG plots and CSV summaries");
  sr->add_option("--model", report.model, "Model JSON or fixtures:<arch>-<f1|iu>");
  sr->add_option("--slopes", report.slopes, "slopes.csv written by calibrate");
  sr->add_option("--calibration", report.calibration, "Calibration CSV");
  sr->add_option("--plans", report.plans, "Plan JSON files or directories");
  sr->add_option("--out", report.out, "Output directory");
  sr->add_flag("--force", report.force, "Overwrite differing outputs");

  PresetsArgs presets;
  auto* sq = app.add_subcommand("presets", "List built-in architectures");
  sq->add_option("--export", presets.export_dir, "Write <name>.arch.json files into this directory");
  sq->add_flag("--force", presets.force, "Overwrite differing outputs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (sa->parsed()) return cmd_analyze(analyze, out);
    if (sc->parsed()) return cmd_calibrate(calibrate, out, err);
    if (sp->parsed()) return cmd_plan(plan, out, err);
    if (sr->parsed()) return cmd_report(report, out, err);
    if (sq->parsed()) return cmd_presets(presets, out);
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ccplan::cli
