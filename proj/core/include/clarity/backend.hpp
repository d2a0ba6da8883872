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

#ifndef CLARITY_BACKEND_HPP_
#define CLARITY_BACKEND_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "clarity/prompt.hpp"

namespace clarity {

// Decoding parameters. Unset values mean "backend default"; whatever is set
// is recorded verbatim in the run cache.
struct SamplingSettings {
  std::optional<double> temperature;
  std::optional<double> top_p;
  std::optional<int> max_tokens;

  std::string to_json() const;
  static SamplingSettings from_json(std::string_view text);
};

enum class Transport { kMock, kHttp };

std::string_view to_string(Transport t);
Transport parse_transport(std::string_view text);

// Mock behaviour knobs. `refusal_rate` is the per-attempt probability of an
// unparsable reply; `always_refuse` makes every reply a refusal.
struct MockOptions {
  double refusal_rate = 0.0;
  bool always_refuse = false;
};

struct ModelBackendDescriptor {
  std::string name = "mock";
  Transport transport = Transport::kMock;
  std::string endpoint;        // http: full URL of the completion endpoint
  std::string model;           // forwarded to http backends as a header
  std::string credential_env;  // http: environment variable holding the token
  SamplingSettings sampling;
  MockOptions mock;
};

struct CompletionRequest {
  TemplateKind kind = TemplateKind::kTedQuality;
  std::string_view transcript;
  std::string_view prompt;  // fully rendered
  int run_index = 0;
  int attempt = 0;
};

// A text-in/text-out model endpoint. Implementations must be callable from
// several threads at once.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual const ModelBackendDescriptor& descriptor() const = 0;
  // Returns the raw reply text. Throws Error(kTransport) on transport failure.
  virtual std::string complete(const CompletionRequest& request) const = 0;
};

// Deterministic given (template kind, transcript, run index, attempt, seed).
// Quality replies centre on a per-transcript level; classification replies
// have a per-transcript dominant category and scientific propensity.
class MockBackend final : public ModelBackend {
 public:
  MockBackend(ModelBackendDescriptor descriptor, std::uint64_t seed);

  const ModelBackendDescriptor& descriptor() const override { return descriptor_; }
  std::string complete(const CompletionRequest& request) const override;

 private:
  ModelBackendDescriptor descriptor_;
  std::uint64_t seed_;
};

// POSTs the rendered prompt as text/plain to `endpoint` and returns the
// response body. Sends "Authorization: Bearer $credential_env".
class HttpBackend final : public ModelBackend {
 public:
  // Throws Error(kConfig) when the endpoint is malformed or the credential
  // variable is unset.
  explicit HttpBackend(ModelBackendDescriptor descriptor,
                       std::chrono::seconds timeout = std::chrono::seconds(120));

  const ModelBackendDescriptor& descriptor() const override { return descriptor_; }
  std::string complete(const CompletionRequest& request) const override;

 private:
  ModelBackendDescriptor descriptor_;
  std::string scheme_host_port_;
  std::string path_;
  std::string token_;
  std::chrono::seconds timeout_;
};

std::unique_ptr<ModelBackend> make_backend(const ModelBackendDescriptor& descriptor,
                                           std::uint64_t seed);

// 64-bit FNV-1a, used for deterministic seeding and request digests.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);

}  // namespace clarity

#endif  // CLARITY_BACKEND_HPP_
