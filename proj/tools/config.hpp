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

#ifndef CLARITY_TOOLS_CONFIG_HPP_
#define CLARITY_TOOLS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/backend.hpp"
#include "clarity/corpus.hpp"
#include "clarity/replication.hpp"

namespace clarity::cli {

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

struct PipelineConfig {
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> mapping;
  PhaseWindows windows = PhaseWindows::defaults();
  // The first backend is primary: its TED-prompt scores fill clarity_mean.
  std::vector<ModelBackendDescriptor> backends = {ModelBackendDescriptor{}};
  int n_runs_quality = 50;
  int n_runs_classification = 15;
  int concurrency = 4;
  CutoffRule cutoff{CutoffMode::kFixed, 5.8};
  CutoffRule late_cutoff{CutoffMode::kFixed, 7.21};
  std::vector<std::filesystem::path> regression_specs;
  std::filesystem::path output_dir = "clarity_out";
  std::optional<std::filesystem::path> cache;
  std::uint64_t seed = 0;

  // Throws Error(kConfig).
  void validate(const EnvLookup& env) const;
  // Throws Error(kConfig) for unknown names; "mock" always resolves.
  const ModelBackendDescriptor& backend(std::string_view name) const;
  bool is_primary(std::string_view name) const;
};

// Environment overrides (applied after the file): CLARITY_LAB_OUTPUT_DIR,
// CLARITY_LAB_CORPUS, CLARITY_LAB_CACHE, CLARITY_LAB_SEED.
PipelineConfig parse_config(std::string_view json_text, const EnvLookup& env = process_env);

// `path`, else $CLARITY_LAB_CONFIG, else defaults. Credentials are never read
// from the file; http backends name an environment variable instead.
PipelineConfig load_config(const std::optional<std::filesystem::path>& path,
                           const EnvLookup& env = process_env);

}  // namespace clarity::cli

#endif  // CLARITY_TOOLS_CONFIG_HPP_
