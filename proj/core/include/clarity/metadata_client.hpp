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

#ifndef CLARITY_METADATA_CLIENT_HPP_
#define CLARITY_METADATA_CLIENT_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/corpus.hpp"
#include "clarity/date.hpp"

namespace clarity {

// Engagement metadata for one video, as returned by the video platform's
// `videos.list` endpoint (parts snippet, contentDetails, statistics).
struct VideoMetadata {
  std::string video_id;
  std::string title;
  std::optional<Date> publish_date;
  std::int64_t duration_s = 0;
  std::optional<std::int64_t> views;
  std::optional<std::int64_t> likes;  // absent when the owner hides likes
};

// ISO-8601 duration as used by the platform ("PT14M32S", "PT1H2S", "P1DT2M").
std::int64_t parse_iso8601_duration(std::string_view text);

// Parses a `videos.list` JSON response body. Items lacking an id or a
// duration are a parse error.
std::vector<VideoMetadata> parse_videos_payload(std::string_view body);

// Path + query for one batched request (at most 50 ids per call).
std::string videos_request_path(std::span<const std::string> ids, std::string_view api_key);

// Overwrites title/duration/views/likes (and the date when present) on
// `record` from `meta`. Throws Error(kDependency) when views or likes are
// missing.
TalkRecord apply_metadata(TalkRecord record, const VideoMetadata& meta);

// HTTPS+JSON client. The API key is read from the environment variable named
// in the options; it is never accepted from a config file.
class MetadataClient {
 public:
  struct Options {
    std::string base_url = "https://www.googleapis.com";
    std::string api_key_env = "YOUTUBE_API_KEY";
    std::chrono::seconds timeout{30};
  };

  MetadataClient();
  explicit MetadataClient(Options options);

  // Batches ids in groups of 50. Throws Error(kConfig) without a key and
  // Error(kTransport) on HTTP failure.
  std::vector<VideoMetadata> fetch(std::span<const std::string> ids) const;

 private:
  Options options_;
};

}  // namespace clarity

#endif  // CLARITY_METADATA_CLIENT_HPP_
