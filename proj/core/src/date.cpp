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

#include "clarity/date.hpp"

#include <charconv>

#include <fmt/core.h>

#include "clarity/error.hpp"

namespace clarity {
namespace {

bool parse_digits(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year}, std::chrono::month{month},
           std::chrono::day{day}) {
  if (!ymd_.ok()) {
    throw Error(ErrorKind::kParse,
                fmt::format("invalid calendar date {}-{}-{}", year, month, day));
  }
}

Date Date::parse(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    throw Error(ErrorKind::kParse, "expected YYYY-MM-DD date", {std::string(text)});
  }
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::to_string() const {
  return fmt::format("{:04d}-{:02d}-{:02d}", year(), month(), day());
}

YearMonth YearMonth::parse(std::string_view text) {
  int y = 0, m = 0;
  if (text.size() != 7 || text[4] != '-' || !parse_digits(text.substr(0, 4), y) ||
      !parse_digits(text.substr(5, 2), m) || m < 1 || m > 12) {
    throw Error(ErrorKind::kParse, "expected YYYY-MM month", {std::string(text)});
  }
  return {y, static_cast<unsigned>(m)};
}

std::string YearMonth::to_string() const {
  return fmt::format("{:04d}-{:02d}", year, month);
}

}  // namespace clarity
