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

// Thin binding layer. Structured results cross the boundary as JSON text and
// are decoded by the Python package.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "ccplan/arch.hpp"
#include "ccplan/calibrate.hpp"
#include "ccplan/complexity.hpp"
#include "ccplan/error.hpp"
#include "ccplan/fixtures.hpp"
#include "ccplan/serialize.hpp"
#include "ccplan/solver.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// (H, W) or (H, W, C) uint8 array to a grayscale raster.
ccplan::RasterImage to_raster(const U8Array& a) {
  if (a.ndim() != 2 && a.ndim() != 3) throw py::value_error("image must have shape (H, W) or (H, W, C)");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  const int c = a.ndim() == 3 ? static_cast<int>(a.shape(2)) : 1;
  std::vector<std::uint8_t> data(a.data(), a.data() + a.size());
  ccplan::RasterImage img(w, h, c, std::move(data));
  return c == 1 ? img : ccplan::to_gray(img);
}

ccplan::ArchSpec arch_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') return ccplan::arch_from_json(json::parse(text));
  return ccplan::preset(text);
}

std::string plan_json(const std::string& arch, const std::string& constraint, double value,
                      const std::optional<std::string>& model, const std::optional<std::string>& profile,
                      const std::string& rounding, double alpha_min, double bytes_per_param,
                      std::optional<double> epsilon) {
  ccplan::PlanInputs in;
  in.arch = arch_arg(arch);
  if (model) in.model = ccplan::model_from_json(json::parse(*model));
  if (profile) in.profile = ccplan::profile_from_json(json::parse(*profile));
  in.options.rounding = ccplan::parse_rounding(rounding);
  in.options.alpha_min = alpha_min;
  if (constraint == "disk") in.constraint = ccplan::DiskBudget{value, bytes_per_param};
  else if (constraint == "ram") in.constraint = ccplan::RamBudget{value, bytes_per_param};
  else if (constraint == "accuracy") in.constraint = ccplan::AccuracyFloor{value};
  else throw py::value_error("constraint must be 'disk', 'ram' or 'accuracy'");
  ccplan::CompressionPlan plan = ccplan::build_plan(in);
  if (epsilon) plan = ccplan::epsilon_check(in, plan, *epsilon);
  return ccplan::plan_to_json(plan).dump();
}

}  // namespace

PYBIND11_MODULE(_ccplan, m) {
  m.doc() = "ccplan native core";

  static py::exception<ccplan::Error> error(m, "CcplanError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ccplan::Error& e) {
      const std::string msg = std::string(ccplan::to_string(e.kind())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  m.def("signal_energy", [](const U8Array& a) { return ccplan::signal_energy(to_raster(a)); }, py::arg("image"));
  m.def("edge_complexity", [](const U8Array& a) { return ccplan::edge_complexity(to_raster(a)); }, py::arg("image"));
  m.def("jpeg_complexity", [](const U8Array& a) { return ccplan::jpeg_complexity(to_raster(a)); }, py::arg("image"));
  m.def(
      "blob_density", [](const U8Array& a) { return ccplan::blob_density(ccplan::binarize(to_raster(a))); },
      py::arg("mask"));
  m.def("combine_jb", &ccplan::combine_jb, py::arg("j"), py::arg("b"), py::arg("omega"));

  m.def(
      "analyze_json",
      [](const std::string& manifest, unsigned threads) {
        py::gil_scoped_release release;
        return ccplan::profile_to_json(
                   ccplan::dataset_complexity(ccplan::load_manifest(manifest), threads).profile)
            .dump();
      },
      py::arg("manifest"), py::arg("threads") = 0);

  m.def("preset_names", &ccplan::preset_names);
  m.def("arch_json", [](const std::string& arch) { return ccplan::arch_to_json(arch_arg(arch)).dump(); },
        py::arg("arch"));
  m.def(
      "param_count",
      [](const std::string& arch, bool include_bias) {
        ccplan::AccountingOptions opts;
        opts.include_bias = include_bias;
        const auto acc = ccplan::param_count(arch_arg(arch), opts);
        py::dict d;
        d["theta"] = acc.theta;
        d["log10_theta"] = acc.log10_theta;
        d["macs"] = acc.macs;
        d["activation_bytes"] = acc.activation_bytes;
        return d;
      },
      py::arg("arch"), py::arg("include_bias") = false);
  m.def(
      "scale_arch_json",
      [](const std::string& arch, double alpha, const std::string& rounding) {
        return ccplan::arch_to_json(ccplan::scale_arch(arch_arg(arch), alpha, ccplan::parse_rounding(rounding)))
            .dump();
      },
      py::arg("arch"), py::arg("alpha"), py::arg("rounding") = "ceil");

  m.def(
      "fit_line",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        if (xs.size() != ys.size()) throw py::value_error("xs and ys differ in length");
        std::vector<ccplan::Point> pts;
        for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], ys[i]});
        const auto fit = ccplan::fit_line(pts);
        return py::make_tuple(fit.slope, fit.intercept, fit.r2);
      },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "fixture_model_json",
      [](const std::string& arch, const std::string& metric) {
        return ccplan::model_to_json(ccplan::fixture_model(arch, ccplan::parse_metric(metric))).dump();
      },
      py::arg("arch"), py::arg("metric"));
  m.def(
      "fixture_profile_json",
      [](const std::string& name) { return ccplan::profile_to_json(ccplan::fixture_profile(name)).dump(); },
      py::arg("name"));
  m.def(
      "alpha_for_accuracy",
      [](double log10_theta, double complexity, double lambda, double delta, double floor) {
        ccplan::DegradationModel model;
        model.lambda = lambda;
        model.delta = delta;
        const auto s = ccplan::alpha_for_accuracy(log10_theta, complexity, model, floor);
        return py::make_tuple(s.alpha, s.log10_theta_target, s.clamped);
      },
      py::arg("log10_theta"), py::arg("complexity"), py::arg("lambda_"), py::arg("delta"), py::arg("floor"));

  m.def("plan_json", &plan_json, py::arg("arch"), py::arg("constraint"), py::arg("value"),
        py::arg("model") = py::none(), py::arg("profile") = py::none(), py::arg("rounding") = "ceil",
        py::arg("alpha_min") = 0.03125, py::arg("bytes_per_param") = 4.0, py::arg("epsilon") = py::none());
}
