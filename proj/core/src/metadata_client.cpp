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

#include "clarity/metadata_client.hpp"

#include <cctype>
#include <cstdlib>

#include <fmt/core.h>
#include "httplib.h"
#include "json.hpp"

#include "clarity/error.hpp"

namespace clarity {

using json = nlohmann::json;

std::int64_t parse_iso8601_duration(std::string_view text) {
  auto bad = [&] { return Error(ErrorKind::kParse, "invalid ISO-8601 duration", {std::string(text)}); };
  if (text.size() < 2 || text[0] != 'P') throw bad();
  std::int64_t total = 0;
  std::int64_t number = 0;
  bool have_digits = false;
  bool in_time = false;
  bool any_component = false;
  for (std::size_t i = 1; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      number = number * 10 + (c - '0');
      have_digits = true;
      continue;
    }
    if (c == 'T') {
      if (in_time || have_digits) throw bad();
      in_time = true;
      continue;
    }
    if (!have_digits) throw bad();
    std::int64_t unit = 0;
    if (!in_time && c == 'D') unit = 86400;
    else if (!in_time && c == 'W') unit = 7 * 86400;
    else if (in_time && c == 'H') unit = 3600;
    else if (in_time && c == 'M') unit = 60;
    else if (in_time && c == 'S') unit = 1;
    else throw bad();
    total += number * unit;
    number = 0;
    have_digits = false;
    any_component = true;
  }
  if (have_digits || !any_component) throw bad();
  return total;
}

namespace {

std::optional<std::int64_t> count_field(const json& stats, const char* key) {
  auto it = stats.find(key);
  if (it == stats.end() || it->is_null()) return std::nullopt;
  // The API serializes counts as decimal strings.
  if (it->is_string()) return std::stoll(it->get<std::string>());
  if (it->is_number_integer()) return it->get<std::int64_t>();
  throw Error(ErrorKind::kParse, "count is neither string nor integer", {key});
}

}  // namespace

std::vector<VideoMetadata> parse_videos_payload(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "metadata payload is not valid JSON", {e.what()});
  }
  std::vector<VideoMetadata> out;
  if (!j.contains("items")) return out;
  for (const auto& item : j.at("items")) {
    VideoMetadata m;
    if (!item.contains("id") || !item["id"].is_string()) {
      throw Error(ErrorKind::kParse, "metadata item without id");
    }
    m.video_id = item["id"].get<std::string>();
    const auto snippet = item.value("snippet", json::object());
    m.title = snippet.value("title", "");
    if (auto published = snippet.value("publishedAt", std::string()); published.size() >= 10) {
      m.publish_date = Date::parse(std::string_view(published).substr(0, 10));
    }
    const auto details = item.value("contentDetails", json::object());
    if (!details.contains("duration")) {
      throw Error(ErrorKind::kParse, "metadata item without duration", {m.video_id});
    }
    m.duration_s = parse_iso8601_duration(details["duration"].get<std::string>());
    const auto stats = item.value("statistics", json::object());
    try {
      m.views = count_field(stats, "viewCount");
      m.likes = count_field(stats, "likeCount");
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::kParse, "non-numeric count", {m.video_id});
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string videos_request_path(std::span<const std::string> ids, std::string_view api_key) {
  std::string joined;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) joined += "%2C";
    joined += httplib::detail::encode_query_param(ids[i]);
  }
  return fmt::format("/youtube/v3/videos?part=snippet%2CcontentDetails%2Cstatistics&id={}&key={}",
                     joined, httplib::detail::encode_query_param(std::string(api_key)));
}

TalkRecord apply_metadata(TalkRecord record, const VideoMetadata& meta) {
  if (!meta.views || !meta.likes) {
    throw Error(ErrorKind::kDependency, "metadata lacks view or like counts", {meta.video_id});
  }
  if (!meta.title.empty()) record.title = meta.title;
  if (meta.publish_date) record.publish_date = *meta.publish_date;
  record.duration_s = meta.duration_s;
  record.views_raw = *meta.views;
  record.likes_raw = *meta.likes;
  return record;
}

MetadataClient::MetadataClient() : MetadataClient(Options{}) {}
MetadataClient::MetadataClient(Options options) : options_(std::move(options)) {}

std::vector<VideoMetadata> MetadataClient::fetch(std::span<const std::string> ids) const {
  const char* key = std::getenv(options_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorKind::kConfig, "metadata API key not set", {options_.api_key_env});
  }
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);

  std::vector<VideoMetadata> out;
  constexpr std::size_t kBatch = 50;
  for (std::size_t start = 0; start < ids.size(); start += kBatch) {
    auto batch = ids.subspan(start, std::min(kBatch, ids.size() - start));
    auto res = client.Get(videos_request_path(batch, key));
    if (!res) {
      throw Error(ErrorKind::kTransport, "metadata request failed",
                  {httplib::to_string(res.error())});
    }
    if (res->status != 200) {
      throw Error(ErrorKind::kTransport, fmt::format("metadata request returned HTTP {}", res->status));
    }
    auto items = parse_videos_payload(res->body);
    out.insert(out.end(), std::make_move_iterator(items.begin()),
               std::make_move_iterator(items.end()));
  }
  return out;
}

}  // namespace clarity
