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

#include "clarity/error.hpp"

namespace clarity {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kIntegrity: return "integrity error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kContent: return "content error";
    case ErrorKind::kRange: return "range error";
    case ErrorKind::kPhase: return "phase error";
    case ErrorKind::kOrdering: return "ordering error";
    case ErrorKind::kDegenerate: return "degenerate input";
    case ErrorKind::kCoverage: return "coverage error";
    case ErrorKind::kAggregation: return "aggregation error";
    case ErrorKind::kTransform: return "transform error";
    case ErrorKind::kSize: return "size error";
    case ErrorKind::kDependency: return "dependency error";
    case ErrorKind::kToken: return "token error";
    case ErrorKind::kCoding: return "coding error";
    case ErrorKind::kCollinearity: return "collinearity error";
    case ErrorKind::kSpec: return "spec error";
    case ErrorKind::kConfig: return "configuration error";
    case ErrorKind::kRender: return "render error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kTransport: return "transport error";
  }
  return "error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    const std::vector<std::string>& details) {
  std::string out(to_string(kind));
  out += ": ";
  out += message;
  if (!details.empty()) {
    out += " [";
    for (std::size_t i = 0; i < details.size(); ++i) {
      if (i > 0) out += ", ";
      out += details[i];
    }
    out += "]";
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::vector<std::string> details)
    : std::runtime_error(compose(kind, message, details)),
      kind_(kind),
      details_(std::move(details)) {}

}  // namespace clarity
