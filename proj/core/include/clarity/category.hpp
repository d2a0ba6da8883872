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

#ifndef CLARITY_CATEGORY_HPP_
#define CLARITY_CATEGORY_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace clarity {

// Closed set of topic categories used for classification.
enum class Category {
  kCosmos,
  kEntertainment,
  kEnvironment,
  kHealth,
  kMind,
  kSociety,
  kTech,
};

// Lexicographic order of the canonical names.
inline constexpr std::array<Category, 7> kAllCategories = {
    Category::kCosmos, Category::kEntertainment, Category::kEnvironment,
    Category::kHealth, Category::kMind,          Category::kSociety,
    Category::kTech,
};

std::string_view name(Category c);

// Case-insensitive match against the canonical names; surrounding
// whitespace is ignored.
std::optional<Category> parse_category(std::string_view text);

}  // namespace clarity

#endif  // CLARITY_CATEGORY_HPP_
