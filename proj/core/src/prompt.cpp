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

#include "clarity/prompt.hpp"

#include <cctype>
#include <charconv>

#include "clarity/error.hpp"

namespace clarity {

std::string_view to_string(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kTedQuality: return "ted_quality";
    case TemplateKind::kAcademicQuality: return "academic_quality";
    case TemplateKind::kClassification: return "classification";
  }
  return "";
}

TemplateKind parse_template_kind(std::string_view text) {
  if (text == "ted_quality" || text == "ted") return TemplateKind::kTedQuality;
  if (text == "academic_quality" || text == "academic") return TemplateKind::kAcademicQuality;
  if (text == "classification") return TemplateKind::kClassification;
  throw Error(ErrorKind::kConfig, "unknown template kind", {std::string(text)});
}

namespace {

constexpr std::string_view kTedBody =
    "You will serve as an expert in evaluating TED lectures.\n"
    "Your task is to assess the quality of a TED lecture based on the following two criteria:\n"
    "\n"
    "Clarity of Explanation (1\xE2\x80\x93" "10)\n"
    "Lecture Structure and Logical Flow (1\xE2\x80\x93" "10)\n"
    "\n"
    "Evaluate based on a transcript of a lecture where only the lecturer's speech is transcribed.\n"
    "Provide a score between 1 and 10 for each criterion, without further explanation.\n"
    "Your response should be in the format: X,X (e.g., 8,9)\n"
    "\n"
    "{transcript}";

constexpr std::string_view kAcademicBody =
    "You will serve as a pedagogical expert in evaluating university-level teaching.\n"
    "Your task is to assess the quality of teaching based on the following two criteria:\n"
    "\n"
    "Clarity of Explanation (1\xE2\x80\x93" "10)\n"
    "Lecture Structure and Logical Flow (1\xE2\x80\x93" "10)\n"
    "\n"
    "Evaluate based on a transcript of a lecture where only the lecturer's speech is transcribed.\n"
    "Provide a score between 1 and 10 for each criterion, without further explanation.\n"
    "Your response should be in the format: X,X (e.g., 8,9)\n"
    "\n"
    "{transcript}";

constexpr std::string_view kClassificationBody =
    "You will serve as an expert in evaluating TED lectures.\n"
    "You are classifying a TED Talk transcript.\n"
    "\n"
    "Task A \xE2\x80\x94 Scientific flag:\n"
    "- Output 1 if the talk is primarily scientific, meaning the content is based on scientific "
    "research, empirical evidence, or established scientific concepts (e.g., experiments, data, "
    "peer-reviewed findings).\n"
    "- Output 0 if the talk mainly uses stories, metaphors, inspiration, or philosophy without "
    "focusing on the scientific method or evidence.\n"
    "\n"
    "Task B \xE2\x80\x94 Category (choose exactly one):\n"
    "Health, Cosmos, Mind, Environment, Tech, Society, Entertainment\n"
    "\n"
    "Evaluate based on a transcript of a lecture where only the lecturer's speech is transcribed.\n"
    "Your response should be in the format: S,CATEGORY (e.g., 1,Tech)\n"
    "where S \xE2\x88\x88 {0,1} and CATEGORY \xE2\x88\x88 {Health, Cosmos, Mind, Environment, Tech, "
    "Society, Entertainment}.\n"
    "\n"
    "{transcript}";

std::string_view marker(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kTedQuality: return "expert in evaluating TED lectures";
    case TemplateKind::kAcademicQuality: return "pedagogical expert";
    case TemplateKind::kClassification: return "Scientific flag";
  }
  return "";
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips whitespace and a single trailing period, then splits on the one
// comma. Returns false when the arity is wrong.
bool split_pair(std::string_view text, std::string_view& left, std::string_view& right) {
  auto s = trim(text);
  if (!s.empty() && s.back() == '.') s = trim(s.substr(0, s.size() - 1));
  const auto comma = s.find(',');
  if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos) {
    return false;
  }
  left = trim(s.substr(0, comma));
  right = trim(s.substr(comma + 1));
  return !left.empty() && !right.empty();
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

PromptTemplate::PromptTemplate(TemplateKind kind, std::string body)
    : kind_(kind), body_(std::move(body)) {
  if (count_occurrences(body_, kTranscriptSlot) != 1) {
    throw Error(ErrorKind::kSpec, "template must contain the {transcript} slot exactly once");
  }
  if (body_.find(marker(kind_)) == std::string::npos) {
    throw Error(ErrorKind::kSpec, "template body lacks the role marker for its kind",
                {std::string(marker(kind_))});
  }
  if (kind_ == TemplateKind::kClassification) {
    for (Category c : kAllCategories) {
      if (body_.find(name(c)) == std::string::npos) {
        throw Error(ErrorKind::kSpec, "classification template must list every category",
                    {std::string(name(c))});
      }
    }
  }
}

const PromptTemplate& PromptTemplate::ted_quality() {
  static const PromptTemplate t(TemplateKind::kTedQuality, std::string(kTedBody));
  return t;
}

const PromptTemplate& PromptTemplate::academic_quality() {
  static const PromptTemplate t(TemplateKind::kAcademicQuality, std::string(kAcademicBody));
  return t;
}

const PromptTemplate& PromptTemplate::classification() {
  static const PromptTemplate t(TemplateKind::kClassification, std::string(kClassificationBody));
  return t;
}

const PromptTemplate& PromptTemplate::builtin(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kTedQuality: return ted_quality();
    case TemplateKind::kAcademicQuality: return academic_quality();
    case TemplateKind::kClassification: return classification();
  }
  return ted_quality();
}

std::string render_prompt(const PromptTemplate& tmpl, std::string_view transcript) {
  if (trim(transcript).empty()) throw Error(ErrorKind::kContent, "empty transcript");
  const auto& body = tmpl.body();
  const auto pos = body.find(kTranscriptSlot);
  std::string out;
  out.reserve(body.size() + transcript.size());
  out.append(body, 0, pos);
  out.append(transcript);
  out.append(body, pos + kTranscriptSlot.size());
  return out;
}

QualityPair parse_quality_response(std::string_view text) {
  std::string_view a, b;
  if (!split_pair(text, a, b)) {
    throw Error(ErrorKind::kParse, "expected two comma-separated scores", {std::string(text)});
  }
  QualityPair out;
  if (!parse_int(a, out.clarity) || !parse_int(b, out.structure)) {
    throw Error(ErrorKind::kParse, "scores must be integers", {std::string(text)});
  }
  if (out.clarity < 1 || out.clarity > 10 || out.structure < 1 || out.structure > 10) {
    throw Error(ErrorKind::kParse, "score outside 1..10", {std::string(text)});
  }
  return out;
}

ClassificationPair parse_classification_response(std::string_view text) {
  std::string_view a, b;
  if (!split_pair(text, a, b)) {
    throw Error(ErrorKind::kParse, "expected S,CATEGORY", {std::string(text)});
  }
  ClassificationPair out;
  if (!parse_int(a, out.sci) || (out.sci != 0 && out.sci != 1)) {
    throw Error(ErrorKind::kParse, "scientific flag must be 0 or 1", {std::string(text)});
  }
  auto category = parse_category(b);
  if (!category) throw Error(ErrorKind::kParse, "unknown category", {std::string(text)});
  out.category = *category;
  return out;
}

}  // namespace clarity
