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

#include "clarity/run_cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <fmt/core.h>
#include "json.hpp"

#include "clarity/error.hpp"

namespace clarity {

using json = nlohmann::json;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", tm.tm_year + 1900,
                     tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

std::string RunCacheEntry::to_json_line() const {
  json j;
  j["talk_id"] = talk_id;
  j["backend"] = backend;
  j["template_kind"] = std::string(to_string(template_kind));
  j["run_index"] = run_index;
  j["raw_response"] = raw_response;
  if (quality) {
    j["parsed"] = {{"clarity", quality->clarity}, {"structure", quality->structure}};
  } else if (classification) {
    j["parsed"] = {{"sci", classification->sci},
                   {"category", std::string(name(classification->category))}};
  } else {
    j["parsed"] = nullptr;
  }
  j["timestamp"] = timestamp;
  j["sampling"] = json::parse(sampling);
  j["attempts"] = attempts;
  j["request_digest"] = request_digest;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

RunCacheEntry RunCacheEntry::from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "run cache line is not valid JSON", {e.what()});
  }
  RunCacheEntry e;
  try {
    e.talk_id = j.at("talk_id").get<std::string>();
    e.backend = j.at("backend").get<std::string>();
    e.template_kind = parse_template_kind(j.at("template_kind").get<std::string>());
    e.run_index = j.at("run_index").get<int>();
    e.raw_response = j.value("raw_response", "");
    e.timestamp = j.value("timestamp", "");
    e.sampling = j.contains("sampling") ? j["sampling"].dump() : "{}";
    e.attempts = j.value("attempts", 1);
    e.request_digest = j.value("request_digest", "");
    const auto& parsed = j.at("parsed");
    if (parsed.is_object()) {
      if (e.template_kind == TemplateKind::kClassification) {
        auto cat = parse_category(parsed.at("category").get<std::string>());
        if (!cat) throw Error(ErrorKind::kParse, "unknown category in run cache");
        e.classification = ClassificationPair{parsed.at("sci").get<int>(), *cat};
      } else {
        e.quality = QualityPair{parsed.at("clarity").get<int>(), parsed.at("structure").get<int>()};
      }
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::kParse, "malformed run cache entry", {ex.what()});
  }
  return e;
}

RunCache::RunCache(std::optional<std::filesystem::path> path, Clock clock)
    : path_(std::move(path)), clock_(std::move(clock)) {
  if (!path_ || !std::filesystem::exists(*path_)) return;
  std::ifstream in(*path_);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      entries_.push_back(RunCacheEntry::from_json_line(line));
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("{}:{}: {}", path_->string(), n, e.what()));
    }
  }
}

std::string RunCache::now() const { return clock_ ? clock_() : utc_timestamp(); }

void RunCache::append(RunCacheEntry entry) {
  std::lock_guard lock(mu_);
  if (path_) {
    if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path());
    std::ofstream out(*path_, std::ios::app);
    if (!out) throw Error(ErrorKind::kIo, "cannot append to run cache", {path_->string()});
    out << entry.to_json_line() << '\n';
    out.flush();
  }
  entries_.push_back(std::move(entry));
}

std::map<int, RunCacheEntry> RunCache::valid_runs(const std::string& talk_id,
                                                  const std::string& backend,
                                                  TemplateKind kind) const {
  std::lock_guard lock(mu_);
  std::map<int, RunCacheEntry> out;
  for (const auto& e : entries_) {
    if (e.talk_id == talk_id && e.backend == backend && e.template_kind == kind && e.parsed()) {
      out.insert_or_assign(e.run_index, e);
    }
  }
  return out;
}

std::vector<RunCacheEntry> RunCache::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

}  // namespace clarity
