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

#ifndef CLARITY_ERROR_HPP_
#define CLARITY_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clarity {

enum class ErrorKind {
  kSchema,
  kIntegrity,
  kParse,
  kContent,
  kRange,
  kPhase,
  kOrdering,
  kDegenerate,
  kCoverage,
  kAggregation,
  kTransform,
  kSize,
  kDependency,
  kToken,
  kCoding,
  kCollinearity,
  kSpec,
  kConfig,
  kRender,
  kIo,
  kTransport,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library. `kind()` lets callers branch on the
// failure class; `details()` carries offending ids/columns/raw text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> details = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> details_;
};

}  // namespace clarity

#endif  // CLARITY_ERROR_HPP_
