// Copyright 2026 The Clarity Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include "json.hpp"

#include "clarity/error.hpp"

namespace clarity::cli {

using json = nlohmann::json;

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

namespace {

CutoffRule cutoff_from(const json& j) {
  if (j.is_number()) return {CutoffMode::kFixed, j.get<double>()};
  if (j.is_string()) return CutoffRule::parse(j.get<std::string>());
  throw Error(ErrorKind::kConfig, "cutoff must be a number or \"iqr\"");
}

ModelBackendDescriptor backend_from(const json& j) {
  ModelBackendDescriptor d;
  d.name = j.at("name").get<std::string>();
  d.transport = parse_transport(j.value("transport", std::string("mock")));
  d.endpoint = j.value("endpoint", std::string());
  d.model = j.value("model", std::string());
  d.credential_env = j.value("credential_env", std::string());
  if (j.contains("api_key") || j.contains("token")) {
    throw Error(ErrorKind::kConfig, "credentials are read from the environment only", {d.name});
  }
  if (j.contains("sampling")) d.sampling = SamplingSettings::from_json(j["sampling"].dump());
  if (j.contains("mock")) {
    d.mock.refusal_rate = j["mock"].value("refusal_rate", 0.0);
    d.mock.always_refuse = j["mock"].value("always_refuse", false);
  }
  return d;
}

}  // namespace

void PipelineConfig::validate(const EnvLookup& env) const {
  if (n_runs_quality < 1 || n_runs_classification < 1) {
    throw Error(ErrorKind::kConfig, "run counts must be >= 1");
  }
  if (concurrency < 1) throw Error(ErrorKind::kConfig, "concurrency must be >= 1");
  if (backends.empty()) throw Error(ErrorKind::kConfig, "no backends configured");
  for (const auto& b : backends) {
    if (b.transport != Transport::kHttp) continue;
    if (b.endpoint.empty()) throw Error(ErrorKind::kConfig, "http backend needs an endpoint", {b.name});
    if (b.credential_env.empty()) {
      throw Error(ErrorKind::kConfig, "http backend needs credential_env", {b.name});
    }
    const auto value = env(b.credential_env);
    if (!value || value->empty()) {
      throw Error(ErrorKind::kConfig,
                  fmt::format("credential variable {} is not set", b.credential_env), {b.name});
    }
  }
  std::error_code ec;
  if (std::filesystem::exists(output_dir, ec) && !std::filesystem::is_directory(output_dir, ec)) {
    throw Error(ErrorKind::kConfig, "output path exists and is not a directory",
                {output_dir.string()});
  }
}

const ModelBackendDescriptor& PipelineConfig::backend(std::string_view name) const {
  for (const auto& b : backends) {
    if (b.name == name) return b;
  }
  static const ModelBackendDescriptor kMock{};
  if (name == kMock.name) return kMock;
  throw Error(ErrorKind::kConfig, "unknown backend", {std::string(name)});
}

bool PipelineConfig::is_primary(std::string_view name) const {
  return backends.empty() ? name == "mock" : backends.front().name == name;
}

PipelineConfig parse_config(std::string_view json_text, const EnvLookup& env) {
  PipelineConfig c;
  json j = json::object();
  const bool blank = json_text.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (!blank) {
    try {
      j = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kConfig, "config is not valid JSON", {e.what()});
    }
  }
  if (!j.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  try {
    if (j.contains("corpus")) c.corpus = j["corpus"].get<std::string>();
    if (j.contains("mapping")) c.mapping = j["mapping"].get<std::string>();
    if (j.contains("phases")) {
      std::vector<PhaseWindow> w;
      for (const auto& p : j["phases"]) {
        w.push_back({parse_phase(p.at("label").get<std::string>()),
                     Date::parse(p.at("first").get<std::string>()),
                     Date::parse(p.at("last").get<std::string>())});
      }
      c.windows = PhaseWindows(std::move(w));
    }
    if (j.contains("backends")) {
      c.backends.clear();
      for (const auto& b : j["backends"]) c.backends.push_back(backend_from(b));
    }
    c.n_runs_quality = j.value("n_runs_quality", c.n_runs_quality);
    c.n_runs_classification = j.value("n_runs_classification", c.n_runs_classification);
    c.concurrency = j.value("concurrency", c.concurrency);
    if (j.contains("cutoff")) c.cutoff = cutoff_from(j["cutoff"]);
    if (j.contains("late_cutoff")) c.late_cutoff = cutoff_from(j["late_cutoff"]);
    if (j.contains("regression_specs")) {
      for (const auto& s : j["regression_specs"]) c.regression_specs.emplace_back(s.get<std::string>());
    }
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("cache")) c.cache = j["cache"].get<std::string>();
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, "malformed config", {e.what()});
  }

  if (auto v = env("CLARITY_LAB_OUTPUT_DIR"); v && !v->empty()) c.output_dir = *v;
  if (auto v = env("CLARITY_LAB_CORPUS"); v && !v->empty()) c.corpus = *v;
  if (auto v = env("CLARITY_LAB_CACHE"); v && !v->empty()) c.cache = *v;
  if (auto v = env("CLARITY_LAB_SEED"); v && !v->empty()) {
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), seed);
    if (ec != std::errc() || ptr != v->data() + v->size()) {
      throw Error(ErrorKind::kConfig, "CLARITY_LAB_SEED is not an unsigned integer", {*v});
    }
    c.seed = seed;
  }
  c.validate(env);
  return c;
}

PipelineConfig load_config(const std::optional<std::filesystem::path>& path,
                           const EnvLookup& env) {
  std::optional<std::filesystem::path> file = path;
  if (!file) {
    if (auto v = env("CLARITY_LAB_CONFIG"); v && !v->empty()) file = *v;
  }
  if (!file) return parse_config("", env);
  std::ifstream in(*file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read config", {file->string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), env);
}

}  // namespace clarity::cli
