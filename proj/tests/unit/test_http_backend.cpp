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

#include "clarity/backend.hpp"
#include "clarity/error.hpp"
#include "clarity/evaluator.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/local_server.hpp"

using namespace clarity;

namespace {

ModelBackendDescriptor http_descriptor(const std::string& base, const std::string& env) {
  ModelBackendDescriptor d;
  d.name = "remote";
  d.transport = Transport::kHttp;
  d.endpoint = base + "/v1/complete";
  d.model = "judge-1";
  d.credential_env = env;
  return d;
}

}  // namespace

TEST_SUITE("http_backend") {
  TEST_CASE("posts the rendered prompt with bearer auth") {
    fixture::LocalServer local;
    std::string seen_auth, seen_model, seen_body;
    local.server.Post("/v1/complete", [&](const httplib::Request& req, httplib::Response& res) {
      seen_auth = req.get_header_value("Authorization");
      seen_model = req.get_header_value("X-Clarity-Model");
      seen_body = req.body;
      res.set_content("8,9", "text/plain");
    });
    local.start();
    ::setenv("CLARITY_TEST_TOKEN", "s3cret", 1);

    const auto backend = make_backend(http_descriptor(local.base_url(), "CLARITY_TEST_TOKEN"), 0);
    TalkRecord t;
    t.id = "x";
    t.transcript = "Hello.";
    EvaluationOptions opt;
    opt.n_runs = 3;
    const auto out = evaluate_quality(t, *backend, opt);
    CHECK(out.runs.size() == 3);
    CHECK(out.runs[0].clarity == 8);
    CHECK(out.runs[0].backend == "remote");
    CHECK(seen_auth == "Bearer s3cret");
    CHECK(seen_model == "judge-1");
    CHECK(seen_body == render_prompt(PromptTemplate::ted_quality(), "Hello."));
  }

  TEST_CASE("non-2xx status is a transport error") {
    fixture::LocalServer local;
    local.server.Post("/v1/complete", [](const httplib::Request&, httplib::Response& res) {
      res.status = 503;
      res.set_content("busy", "text/plain");
    });
    local.start();
    ::setenv("CLARITY_TEST_TOKEN", "s3cret", 1);
    HttpBackend backend(http_descriptor(local.base_url(), "CLARITY_TEST_TOKEN"));
    CompletionRequest req;
    req.prompt = "p";
    CHECK(fixture::error_kind([&] { backend.complete(req); }) == ErrorKind::kTransport);
  }

  TEST_CASE("unreachable endpoint is a transport error") {
    ::setenv("CLARITY_TEST_TOKEN", "s3cret", 1);
    HttpBackend backend(http_descriptor("http://127.0.0.1:1", "CLARITY_TEST_TOKEN"),
                        std::chrono::seconds(2));
    CompletionRequest req;
    req.prompt = "p";
    CHECK(fixture::error_kind([&] { backend.complete(req); }) == ErrorKind::kTransport);
  }

  TEST_CASE("credentials and endpoint are validated up front") {
    ::unsetenv("CLARITY_TEST_TOKEN_UNSET");
    CHECK(fixture::error_kind([] {
            HttpBackend(http_descriptor("http://127.0.0.1:9", "CLARITY_TEST_TOKEN_UNSET"));
          }) == ErrorKind::kConfig);
    ::setenv("CLARITY_TEST_TOKEN", "s3cret", 1);
    CHECK(fixture::error_kind([] {
            auto d = http_descriptor("", "CLARITY_TEST_TOKEN");
            d.endpoint = "not a url";
            HttpBackend backend(d);
          }) == ErrorKind::kConfig);
    CHECK(fixture::error_kind([] { HttpBackend(http_descriptor("http://127.0.0.1:9", "")); }) ==
          ErrorKind::kConfig);
  }

  TEST_CASE("sampling settings serialize verbatim") {
    SamplingSettings s;
    s.temperature = 0.7;
    s.max_tokens = 16;
    const auto back = SamplingSettings::from_json(s.to_json());
    CHECK(back.temperature == 0.7);
    CHECK(back.max_tokens == 16);
    CHECK_FALSE(back.top_p.has_value());
    CHECK(SamplingSettings{}.to_json() == "{}");
  }
}
