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

#include "clarity/backend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <fmt/core.h>
#include "httplib.h"
#include "json.hpp"

#include "clarity/error.hpp"

namespace clarity {

using json = nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string SamplingSettings::to_json() const {
  json j = json::object();
  if (temperature) j["temperature"] = *temperature;
  if (top_p) j["top_p"] = *top_p;
  if (max_tokens) j["max_tokens"] = *max_tokens;
  return j.dump();
}

SamplingSettings SamplingSettings::from_json(std::string_view text) {
  SamplingSettings s;
  const auto j = json::parse(text);
  if (j.contains("temperature")) s.temperature = j["temperature"].get<double>();
  if (j.contains("top_p")) s.top_p = j["top_p"].get<double>();
  if (j.contains("max_tokens")) s.max_tokens = j["max_tokens"].get<int>();
  return s;
}

std::string_view to_string(Transport t) { return t == Transport::kMock ? "mock" : "http"; }

Transport parse_transport(std::string_view text) {
  if (text == "mock") return Transport::kMock;
  if (text == "http") return Transport::kHttp;
  throw Error(ErrorKind::kConfig, "unknown backend transport", {std::string(text)});
}

// ---------------------------------------------------------------------------
// Mock

MockBackend::MockBackend(ModelBackendDescriptor descriptor, std::uint64_t seed)
    : descriptor_(std::move(descriptor)), seed_(seed) {}

std::string MockBackend::complete(const CompletionRequest& request) const {
  const std::uint64_t talk_hash = fnv1a(request.transcript, fnv1a(descriptor_.name) ^ seed_);
  std::uint64_t run_hash = fnv1a(to_string(request.kind), talk_hash);
  run_hash = fnv1a(std::to_string(request.run_index) + "/" + std::to_string(request.attempt),
                   run_hash);
  std::mt19937_64 rng(run_hash);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (descriptor_.mock.always_refuse || unit(rng) < descriptor_.mock.refusal_rate) {
    return "I cannot evaluate this transcript.";
  }

  // Per-talk latent quantities come from the talk hash only, so every run of
  // a talk shares them.
  std::mt19937_64 talk_rng(talk_hash);
  const double level = 5.5 + 3.5 * unit(talk_rng);
  const double sci_propensity = unit(talk_rng) < 0.35 ? 0.93 : 0.04;
  const auto dominant = kAllCategories[talk_rng() % kAllCategories.size()];

  if (request.kind == TemplateKind::kClassification) {
    const int sci = unit(rng) < sci_propensity ? 1 : 0;
    Category category = dominant;
    if (unit(rng) >= 0.9) category = kAllCategories[rng() % kAllCategories.size()];
    return fmt::format("{},{}", sci, name(category));
  }

  std::normal_distribution<double> noise(0.0, 0.7);
  const double offset = request.kind == TemplateKind::kAcademicQuality ? -0.4 : 0.0;
  auto score = [&](double centre) {
    return std::clamp(static_cast<int>(std::lround(centre + noise(rng))), 1, 10);
  };
  const int clarity = score(level + offset);
  const int structure = score(level + offset + 0.5);
  return fmt::format("{},{}", clarity, structure);
}

// ---------------------------------------------------------------------------
// HTTP

HttpBackend::HttpBackend(ModelBackendDescriptor descriptor, std::chrono::seconds timeout)
    : descriptor_(std::move(descriptor)), timeout_(timeout) {
  const auto& url = descriptor_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::kConfig, "backend endpoint must be an absolute URL", {url});
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);

  if (descriptor_.credential_env.empty()) {
    throw Error(ErrorKind::kConfig, "http backend requires a credential variable",
                {descriptor_.name});
  }
  const char* token = std::getenv(descriptor_.credential_env.c_str());
  if (token == nullptr || *token == '\0') {
    throw Error(ErrorKind::kConfig, "credential variable is not set",
                {descriptor_.name, descriptor_.credential_env});
  }
  token_ = token;
}

std::string HttpBackend::complete(const CompletionRequest& request) const {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  httplib::Headers headers = {{"Authorization", "Bearer " + token_},
                              {"X-Clarity-Template", std::string(to_string(request.kind))},
                              {"X-Clarity-Run", std::to_string(request.run_index)}};
  if (!descriptor_.model.empty()) headers.emplace("X-Clarity-Model", descriptor_.model);
  auto res = client.Post(path_, headers, std::string(request.prompt), "text/plain; charset=utf-8");
  if (!res) {
    throw Error(ErrorKind::kTransport, "backend request failed",
                {descriptor_.name, httplib::to_string(res.error())});
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorKind::kTransport, fmt::format("backend returned HTTP {}", res->status),
                {descriptor_.name});
  }
  return res->body;
}

std::unique_ptr<ModelBackend> make_backend(const ModelBackendDescriptor& descriptor,
                                           std::uint64_t seed) {
  if (descriptor.transport == Transport::kMock) {
    return std::make_unique<MockBackend>(descriptor, seed);
  }
  return std::make_unique<HttpBackend>(descriptor);
}

}  // namespace clarity
