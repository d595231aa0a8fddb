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

#include "ccplan/serialize.hpp"

#include <fstream>

#include "ccplan/arch.hpp"
#include "ccplan/error.hpp"

namespace ccplan {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string(what) + " json: " + e.what());
  }
}

}  // namespace

json profile_to_json(const ComplexityProfile& p) {
  json j = {{"name", p.dataset_name},      {"image_count", p.image_count}, {"energy", opt(p.energy)},
            {"edge", opt(p.edge)},         {"jpeg_j", p.jpeg_j},           {"blob_b", opt(p.blob_b)},
            {"jb", opt(p.jb)}};
  if (p.jb) j["omega"] = opt(p.omega);
  return j;
}

ComplexityProfile profile_from_json(const json& j) {
  return guarded("profile", [&] {
    ComplexityProfile p;
    p.dataset_name = j.value("name", std::string());
    p.image_count = j.value("image_count", std::size_t{1});
    p.energy = get_opt(j, "energy");
    p.edge = get_opt(j, "edge");
    p.jpeg_j = j.at("jpeg_j").get<double>();
    p.blob_b = get_opt(j, "blob_b");
    p.jb = get_opt(j, "jb");
    p.omega = get_opt(j, "omega");
    if (p.blob_b && (*p.blob_b < 0.0 || *p.blob_b > 1.0)) fail(ErrorKind::kFormat, "profile blob_b outside [0, 1]");
    if (!(p.jpeg_j > 0.0)) fail(ErrorKind::kFormat, "profile jpeg_j must be positive");
    return p;
  });
}

json model_to_json(const DegradationModel& m) {
  return {{"architecture", m.architecture},
          {"metric", std::string(to_string(m.metric))},
          {"complexity_kind", std::string(to_string(m.complexity_kind))},
          {"lambda", m.lambda},
          {"delta", m.delta},
          {"omega", opt(m.omega)},
          {"r2", opt(m.r2)},
          {"source", std::string(to_string(m.source))}};
}

DegradationModel model_from_json(const json& j) {
  return guarded("model", [&] {
    DegradationModel m;
    m.architecture = j.at("architecture").get<std::string>();
    m.metric = parse_metric(j.at("metric").get<std::string>());
    m.complexity_kind = parse_complexity_kind(j.at("complexity_kind").get<std::string>());
    m.lambda = j.at("lambda").get<double>();
    m.delta = j.at("delta").get<double>();
    m.omega = get_opt(j, "omega");
    m.r2 = get_opt(j, "r2");
    const std::string source = j.value("source", std::string("fitted"));
    m.source = source == "paper_fixture" ? ModelSource::kPaperFixture : ModelSource::kFitted;
    if (m.omega && (*m.omega < 0.0 || *m.omega > 1.0)) fail(ErrorKind::kFormat, "model omega outside [0, 1]");
    return m;
  });
}

json plan_to_json(const CompressionPlan& p) {
  return {{"architecture", p.architecture},
          {"dataset", p.dataset},
          {"constraint", p.constraint},
          {"complexity", opt(p.complexity)},
          {"alpha_continuous", p.alpha_continuous},
          {"alpha_applied", p.alpha_applied},
          {"theta_base", p.theta_base},
          {"theta_target", p.theta_target},
          {"theta_realized", p.theta_realized},
          {"log10_theta_base", p.log10_theta_base},
          {"log10_theta_target", p.log10_theta_target},
          {"log10_theta_realized", p.log10_theta_realized},
          {"predicted_rel_acc", opt(p.predicted_rel_acc)},
          {"clamped", p.clamped},
          {"rounding", std::string(to_string(p.rounding))},
          {"budget_search", p.budget_search},
          {"memory_bytes_realized", p.memory_bytes_realized},
          {"pr", p.pr},
          {"lr_proxy", p.lr_proxy},
          {"scaled_arch", arch_to_json(p.scaled_arch)}};
}

CompressionPlan plan_from_json(const json& j) {
  return guarded("plan", [&] {
    CompressionPlan p;
    p.architecture = j.at("architecture").get<std::string>();
    p.dataset = j.value("dataset", std::string());
    p.constraint = j.value("constraint", std::string());
    p.complexity = get_opt(j, "complexity");
    p.alpha_continuous = j.at("alpha_continuous").get<double>();
    p.alpha_applied = j.at("alpha_applied").get<double>();
    p.theta_base = j.at("theta_base").get<double>();
    p.theta_target = j.at("theta_target").get<double>();
    p.theta_realized = j.at("theta_realized").get<std::uint64_t>();
    p.log10_theta_base = j.at("log10_theta_base").get<double>();
    p.log10_theta_target = j.at("log10_theta_target").get<double>();
    p.log10_theta_realized = j.at("log10_theta_realized").get<double>();
    p.predicted_rel_acc = get_opt(j, "predicted_rel_acc");
    p.clamped = j.value("clamped", false);
    p.rounding = parse_rounding(j.value("rounding", std::string("ceil")));
    p.budget_search = j.value("budget_search", false);
    p.memory_bytes_realized = j.value("memory_bytes_realized", std::uint64_t{0});
    p.pr = j.at("pr").get<double>();
    p.lr_proxy = j.at("lr_proxy").get<double>();
    if (j.contains("scaled_arch")) p.scaled_arch = arch_from_json(j["scaled_arch"]);
    return p;
  });
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, path.string() + ": " + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ccplan
