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

#ifndef CLARITY_RUN_CACHE_HPP_
#define CLARITY_RUN_CACHE_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "clarity/prompt.hpp"

namespace clarity {

// One line of the append-only run cache.
struct RunCacheEntry {
  std::string talk_id;
  std::string backend;
  TemplateKind template_kind = TemplateKind::kTedQuality;
  int run_index = 0;
  std::string raw_response;
  std::optional<QualityPair> quality;              // parsed quality reply
  std::optional<ClassificationPair> classification;  // parsed classification reply
  std::string timestamp;                           // ISO-8601 UTC
  std::string sampling = "{}";                     // JSON object, verbatim
  int attempts = 1;
  std::string request_digest;                      // FNV-1a of the rendered prompt

  bool parsed() const { return quality.has_value() || classification.has_value(); }

  std::string to_json_line() const;
  static RunCacheEntry from_json_line(std::string_view line);
};

// Append-only JSONL store of every settled run. Appends are serialized; the
// file is flushed after each line so an interrupted pipeline can resume.
class RunCache {
 public:
  using Clock = std::function<std::string()>;

  // Loads existing entries when the file exists. A null path keeps the cache
  // in memory only.
  explicit RunCache(std::optional<std::filesystem::path> path = std::nullopt,
                    Clock clock = nullptr);

  void append(RunCacheEntry entry);

  // Parsed entries for (talk, backend, kind), keyed by run index. Later lines
  // win for a repeated index.
  std::map<int, RunCacheEntry> valid_runs(const std::string& talk_id, const std::string& backend,
                                          TemplateKind kind) const;

  std::vector<RunCacheEntry> entries() const;
  std::string now() const;

 private:
  std::optional<std::filesystem::path> path_;
  Clock clock_;
  mutable std::mutex mu_;
  std::vector<RunCacheEntry> entries_;
};

std::string utc_timestamp();

}  // namespace clarity

#endif  // CLARITY_RUN_CACHE_HPP_
