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

#ifndef CLARITY_TESTS_FIXTURES_HPP_
#define CLARITY_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <optional>
#include <string>

#include "clarity/error.hpp"

namespace fixture {

inline std::filesystem::path path(const std::string& name) {
  return std::filesystem::path(CLARITY_FIXTURE_DIR) / name;
}

inline std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(CLARITY_WORK_DIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Kind of the clarity::Error thrown by `f`, or nullopt when nothing is thrown.
template <typename F>
std::optional<clarity::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const clarity::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace fixture

#endif  // CLARITY_TESTS_FIXTURES_HPP_
