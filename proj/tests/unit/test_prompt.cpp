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

#include "clarity/category.hpp"
#include "clarity/error.hpp"
#include "clarity/prompt.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace clarity;

TEST_SUITE("prompt") {
  TEST_CASE("rendering substitutes the transcript verbatim") {
    const auto ted = render_prompt(PromptTemplate::ted_quality(), "Hello.");
    CHECK(ted.find("expert in evaluating TED lectures") != std::string::npos);
    CHECK(ted.find("Hello.") != std::string::npos);
    CHECK(ted.find("{transcript}") == std::string::npos);

    const auto academic = render_prompt(PromptTemplate::academic_quality(), "Any text {x}");
    CHECK(academic.find("pedagogical expert") != std::string::npos);
    CHECK(academic.find("Any text {x}") != std::string::npos);

    const auto cls = render_prompt(PromptTemplate::classification(), "t");
    for (auto c : kAllCategories) CHECK(cls.find(std::string(name(c))) != std::string::npos);
  }

  TEST_CASE("rendering leaves everything but the slot untouched") {
    const auto& tmpl = PromptTemplate::ted_quality();
    const auto out = render_prompt(tmpl, "ABC");
    const auto slot = tmpl.body().find(kTranscriptSlot);
    CHECK(out.substr(0, slot) == tmpl.body().substr(0, slot));
    CHECK(out.substr(slot + 3) == tmpl.body().substr(slot + kTranscriptSlot.size()));
  }

  TEST_CASE("empty transcript is a content error") {
    CHECK(fixture::error_kind([] { render_prompt(PromptTemplate::ted_quality(), ""); }) ==
          ErrorKind::kContent);
    CHECK(fixture::error_kind([] { render_prompt(PromptTemplate::ted_quality(), " \n"); }) ==
          ErrorKind::kContent);
  }

  TEST_CASE("custom templates must carry the slot and marker") {
    CHECK(fixture::error_kind([] {
            PromptTemplate(TemplateKind::kTedQuality, "expert in evaluating TED lectures");
          }) == ErrorKind::kSpec);
    CHECK(fixture::error_kind([] {
            PromptTemplate(TemplateKind::kTedQuality, "{transcript} {transcript}");
          }) == ErrorKind::kSpec);
    CHECK(fixture::error_kind([] {
            PromptTemplate(TemplateKind::kAcademicQuality, "Score: {transcript}");
          }) == ErrorKind::kSpec);
    const PromptTemplate ok(TemplateKind::kTedQuality,
                            "An expert in evaluating TED lectures reads: {transcript}");
    CHECK(render_prompt(ok, "hi") == "An expert in evaluating TED lectures reads: hi");
  }

  TEST_CASE("quality reply parsing") {
    CHECK(parse_quality_response("8,9") == QualityPair{8, 9});
    CHECK(parse_quality_response(" 10 , 7 ") == QualityPair{10, 7});
    CHECK(parse_quality_response("6,7.") == QualityPair{6, 7});
    for (const char* bad : {"0,5", "11,3", "8", "8,9,10", "eight,nine", "8.5,9", "", "I cannot"}) {
      try {
        parse_quality_response(bad);
        FAIL("accepted " << bad);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kParse);
        REQUIRE(e.details().size() == 1);
        CHECK(e.details()[0] == bad);
      }
    }
  }

  TEST_CASE("classification reply parsing") {
    CHECK(parse_classification_response("1,Tech") == ClassificationPair{1, Category::kTech});
    CHECK(parse_classification_response("0,society") == ClassificationPair{0, Category::kSociety});
    CHECK(parse_classification_response(" 1 , ENTERTAINMENT ") ==
          ClassificationPair{1, Category::kEntertainment});
    CHECK(fixture::error_kind([] { parse_classification_response("2,Food"); }) == ErrorKind::kParse);
    CHECK(fixture::error_kind([] { parse_classification_response("2,Tech"); }) == ErrorKind::kParse);
    CHECK(fixture::error_kind([] { parse_classification_response("1,Food"); }) == ErrorKind::kParse);
    CHECK(fixture::error_kind([] { parse_classification_response("Tech"); }) == ErrorKind::kParse);
  }

  TEST_CASE("category names") {
    CHECK(parse_category(" mind ") == Category::kMind);
    CHECK_FALSE(parse_category("Food").has_value());
    for (std::size_t i = 1; i < kAllCategories.size(); ++i) {
      CHECK(name(kAllCategories[i - 1]) < name(kAllCategories[i]));
    }
    CHECK(parse_template_kind("academic") == TemplateKind::kAcademicQuality);
  }
}
