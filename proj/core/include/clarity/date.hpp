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

#ifndef CLARITY_DATE_HPP_
#define CLARITY_DATE_HPP_

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace clarity {

// Calendar date without a time zone.
class Date {
 public:
  constexpr Date() = default;
  Date(int year, unsigned month, unsigned day);

  // Strict ISO-8601 "YYYY-MM-DD". Throws Error(kParse) otherwise.
  static Date parse(std::string_view text);

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  std::string to_string() const;

  friend auto operator<=>(const Date& a, const Date& b) {
    return std::chrono::sys_days(a.ymd_) <=> std::chrono::sys_days(b.ymd_);
  }
  friend bool operator==(const Date& a, const Date& b) = default;

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970},
                                   std::chrono::month{1}, std::chrono::day{1}};
};

struct YearMonth {
  int year = 0;
  unsigned month = 0;

  // "YYYY-MM"; Throws Error(kParse) otherwise.
  static YearMonth parse(std::string_view text);
  static YearMonth of(const Date& d) { return {d.year(), d.month()}; }
  std::string to_string() const;

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

}  // namespace clarity

#endif  // CLARITY_DATE_HPP_
