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

#include <cstdlib>

#include "clarity/error.hpp"
#include "clarity/metadata_client.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/local_server.hpp"

using namespace clarity;

TEST_SUITE("metadata") {
  TEST_CASE("ISO-8601 durations") {
    CHECK(parse_iso8601_duration("PT14M32S") == 872);
    CHECK(parse_iso8601_duration("PT1H2S") == 3602);
    CHECK(parse_iso8601_duration("P1DT2M") == 86520);
    CHECK(parse_iso8601_duration("PT45S") == 45);
    CHECK(fixture::error_kind([] { parse_iso8601_duration("14:32"); }) == ErrorKind::kParse);
    CHECK(fixture::error_kind([] { parse_iso8601_duration("PT"); }) == ErrorKind::kParse);
  }

  TEST_CASE("videos.list payload fixture") {
    const auto items = parse_videos_payload(fixture::read(fixture::path("videos_list.json")));
    REQUIRE(items.size() == 3);
    CHECK(items[0].video_id == "dQw4w9WgXcQ");
    CHECK(items[0].duration_s == 1087);
    CHECK(items[0].views == 4127733);
    CHECK(items[0].likes == 61234);
    CHECK(items[0].publish_date == Date(2009, 5, 14));
    CHECK(items[1].duration_s == 3720);
    CHECK_FALSE(items[2].likes.has_value());
  }

  TEST_CASE("item without a duration is a parse error") {
    const char* body = R"({"items": [{"id": "x", "snippet": {}, "statistics": {}}]})";
    CHECK(fixture::error_kind([&] { parse_videos_payload(body); }) == ErrorKind::kParse);
  }

  TEST_CASE("apply_metadata overwrites engagement and needs both counts") {
    const auto items = parse_videos_payload(fixture::read(fixture::path("videos_list.json")));
    TalkRecord r;
    r.id = "dQw4w9WgXcQ";
    const auto out = apply_metadata(r, items[0]);
    CHECK(out.views_raw == 4127733);
    CHECK(out.likes_raw == 61234);
    CHECK(out.duration_s == 1087);
    CHECK(out.title == "Video dQw4w9WgXcQ");
    CHECK(fixture::error_kind([&] { apply_metadata(r, items[2]); }) == ErrorKind::kDependency);
  }

  TEST_CASE("request path batches ids and encodes the key") {
    const std::vector<std::string> ids = {"a", "b"};
    const auto path = videos_request_path(ids, "k y");
    CHECK(path.find("id=a%2Cb") != std::string::npos);
    CHECK(path.find("key=k%20y") != std::string::npos);
  }

  TEST_CASE("client fetches in batches of 50 from a local server") {
    fixture::LocalServer local;
    int calls = 0;
    local.server.Get("/youtube/v3/videos", [&](const httplib::Request& req, httplib::Response& res) {
      ++calls;
      CHECK(req.get_param_value("key") == "test-key");
      std::string items;
      std::string id_list = req.get_param_value("id");
      std::size_t start = 0;
      while (start <= id_list.size()) {
        auto end = id_list.find(',', start);
        if (end == std::string::npos) end = id_list.size();
        const auto id = id_list.substr(start, end - start);
        if (!items.empty()) items += ",";
        items += R"({"id":")" + id +
                 R"(","contentDetails":{"duration":"PT1M"},"statistics":{"viewCount":"10","likeCount":"2"}})";
        start = end + 1;
      }
      res.set_content(R"({"items":[)" + items + "]}", "application/json");
    });
    local.start();

    ::setenv("CLARITY_TEST_METADATA_KEY", "test-key", 1);
    MetadataClient::Options opt;
    opt.base_url = local.base_url();
    opt.api_key_env = "CLARITY_TEST_METADATA_KEY";
    std::vector<std::string> ids;
    for (int i = 0; i < 120; ++i) ids.push_back("v" + std::to_string(i));
    const auto got = MetadataClient(opt).fetch(ids);
    CHECK(calls == 3);
    REQUIRE(got.size() == 120);
    CHECK(got[119].video_id == "v119");
    CHECK(got[0].likes == 2);

    opt.api_key_env = "CLARITY_TEST_METADATA_UNSET";
    ::unsetenv("CLARITY_TEST_METADATA_UNSET");
    CHECK(fixture::error_kind([&] { MetadataClient(opt).fetch(ids); }) == ErrorKind::kConfig);
  }
}
