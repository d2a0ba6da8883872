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

#ifndef CLARITY_PROMPT_HPP_
#define CLARITY_PROMPT_HPP_

#include <string>
#include <string_view>

#include "clarity/category.hpp"

namespace clarity {

enum class TemplateKind { kTedQuality, kAcademicQuality, kClassification };

std::string_view to_string(TemplateKind kind);
TemplateKind parse_template_kind(std::string_view text);

inline constexpr std::string_view kTranscriptSlot = "{transcript}";

class PromptTemplate {
 public:
  // Throws Error(kSpec) unless `body` contains the slot exactly once and the
  // marker phrase for `kind`.
  PromptTemplate(TemplateKind kind, std::string body);

  static const PromptTemplate& ted_quality();
  static const PromptTemplate& academic_quality();
  static const PromptTemplate& classification();
  static const PromptTemplate& builtin(TemplateKind kind);

  TemplateKind kind() const { return kind_; }
  const std::string& body() const { return body_; }

 private:
  TemplateKind kind_;
  std::string body_;
};

// Substitutes the transcript into the slot; everything else is copied byte
// for byte. Throws Error(kContent) on an empty transcript.
std::string render_prompt(const PromptTemplate& tmpl, std::string_view transcript);

struct QualityPair {
  int clarity = 0;
  int structure = 0;
  friend bool operator==(const QualityPair&, const QualityPair&) = default;
};

struct ClassificationPair {
  int sci = 0;
  Category category = Category::kSociety;
  friend bool operator==(const ClassificationPair&, const ClassificationPair&) = default;
};

// "X,X" with both scores in 1..10. Surrounding whitespace and one trailing
// period are tolerated. Throws Error(kParse) carrying the raw text.
QualityPair parse_quality_response(std::string_view text);

// "S,CATEGORY" with S in {0,1}; the category is matched case-insensitively.
ClassificationPair parse_classification_response(std::string_view text);

}  // namespace clarity

#endif  // CLARITY_PROMPT_HPP_
