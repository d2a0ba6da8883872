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

#include <sstream>

#include "clarity/corpus.hpp"
#include "clarity/csv.hpp"
#include "clarity/error.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace clarity;

namespace {

const char* kHeader = "id,title,publish_date,duration_s,views_raw,likes_raw,transcript\n";

TalkRecord talk(std::string id, Date date = Date(2010, 6, 15)) {
  TalkRecord r;
  r.id = std::move(id);
  r.title = "t";
  r.publish_date = date;
  r.duration_s = 600;
  r.transcript = "Some words here.";
  r.views_raw = 1000;
  r.likes_raw = 10;
  return r;
}

ErrorKind thrown(const std::string& text) {
  try {
    parse_corpus(text, CorpusFormat::kCsv);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kIo;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("csv reader handles quotes, embedded newlines and CRLF") {
    const auto rows = csv::read("\xEF\xBB\xBF" "a,b\r\n\"x, \"\"y\"\"\",\"two\nlines\"\r\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b"});
    CHECK(rows[1].fields[0] == "x, \"y\"");
    CHECK(rows[1].fields[1] == "two\nlines");
    CHECK(rows[1].line == 2);
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,\"b\"") == "\"a,\"\"b\"\"\"");
  }

  TEST_CASE("two well-formed rows load as two records") {
    const std::string text = std::string(kHeader) +
                             "a,First,2008-03-01,900,5000,50,Hello there.\n"
                             "b,Second,2017-05-02,300,800,9,Another one.\n";
    const auto ds = parse_corpus(text, CorpusFormat::kCsv);
    REQUIRE(ds.size() == 2);
    CHECK(ds.records()[0].phase == Phase::kEarly);
    CHECK(ds.records()[1].phase == Phase::kLate);
    CHECK(ds.find("b")->duration_s == 300);
    CHECK(ds.find("zzz") == nullptr);
  }

  TEST_CASE("missing required column names the column") {
    const std::string text =
        "id,title,publish_date,views_raw,likes_raw,transcript\n"
        "a,First,2008-03-01,5000,50,Hello.\n";
    try {
      parse_corpus(text, CorpusFormat::kCsv);
      FAIL("expected schema error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kSchema);
      REQUIRE(e.details().size() == 1);
      CHECK(e.details()[0] == "duration_s");
    }
  }

  TEST_CASE("duplicate ids are an integrity error") {
    const std::string text = std::string(kHeader) +
                             "a,First,2008-03-01,900,5000,50,Hello.\n"
                             "a,Again,2008-03-02,900,5000,50,Hello.\n";
    CHECK(thrown(text) == ErrorKind::kIntegrity);
  }

  TEST_CASE("unparsable row reports its row number") {
    const std::string text = std::string(kHeader) +
                             "a,First,2008-03-01,900,5000,50,Hello.\n"
                             "b,Second,2008-03-01,long,5000,50,Hello.\n";
    try {
      parse_corpus(text, CorpusFormat::kCsv);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kParse);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
    CHECK(thrown(std::string(kHeader) + "a,First,2008-13-01,900,5000,50,Hello.\n") ==
          ErrorKind::kParse);
    CHECK(thrown(std::string(kHeader) + "a,First,2008-03-01,900,5000\n") == ErrorKind::kParse);
  }

  TEST_CASE("dates outside every window are a phase error listing ids") {
    const std::string text = std::string(kHeader) +
                             "a,First,2015-03-01,900,5000,50,Hello.\n"
                             "b,Second,2008-03-01,900,5000,50,Hello.\n";
    try {
      parse_corpus(text, CorpusFormat::kCsv);
      FAIL("expected phase error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kPhase);
      REQUIRE(e.details().size() == 1);
      CHECK(e.details()[0].rfind("a ", 0) == 0);
    }
  }

  TEST_CASE("validate_talk") {
    auto r = talk("x");
    r.duration_s = 136;
    CHECK(validate_talk(r).duration_s == 136);

    auto neg = talk("x");
    neg.views_raw = -1;
    CHECK(fixture::error_kind([&] { validate_talk(neg); }) == ErrorKind::kRange);

    auto empty = talk("x");
    empty.transcript = "  \n";
    CHECK(fixture::error_kind([&] { validate_talk(empty); }) == ErrorKind::kContent);

    auto zero = talk("x");
    zero.duration_s = 0;
    CHECK(fixture::error_kind([&] { validate_talk(zero); }) == ErrorKind::kRange);

    CHECK(fixture::error_kind([&] { validate_talk(talk("x", Date(2016, 1, 1))); }) ==
          ErrorKind::kPhase);
  }

  TEST_CASE("every violation is listed, first kind wins") {
    auto r = talk("x", Date(2015, 1, 1));
    r.transcript.clear();
    r.likes_raw = -3;
    try {
      validate_talk(r);
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kContent);
      CHECK(e.details().size() == 3);
    }
  }

  TEST_CASE("phase windows") {
    const auto w = PhaseWindows::defaults();
    CHECK(w.classify(Date(2006, 12, 25)) == Phase::kEarly);
    CHECK(w.classify(Date(2013, 12, 23)) == Phase::kEarly);
    CHECK_FALSE(w.classify(Date(2006, 12, 24)).has_value());
    CHECK_FALSE(w.classify(Date(2013, 12, 24)).has_value());
    CHECK(w.classify(Date(2017, 1, 1)) == Phase::kLate);
    CHECK(w.classify(Date(2019, 12, 31)) == Phase::kLate);
    CHECK_FALSE(w.classify(Date(2018, 6, 1)).has_value());
    CHECK(fixture::error_kind([] {
            PhaseWindows({{Phase::kEarly, Date(2010, 1, 1), Date(2011, 1, 1)},
                          {Phase::kLate, Date(2010, 6, 1), Date(2012, 1, 1)}});
          }) == ErrorKind::kConfig);
  }

  TEST_CASE("fixture corpus loads and splits by phase") {
    const auto ds = load_corpus(fixture::path("talks.csv"), CorpusFormat::kCsv);
    CHECK(ds.size() == 118);
    std::size_t early = 0;
    for (const auto& r : ds.records()) early += r.phase == Phase::kEarly;
    CHECK(early == 94);
    CHECK(ds.find("talk001")->title == "Talk 1: on city, design and \"network\"");
  }

  TEST_CASE("column mapping renames source columns and keeps numeric extras") {
    LoadOptions opt;
    opt.mapping = ColumnMapping::from_file(fixture::path("mapping.json"));
    const auto ds = load_corpus(fixture::path("talks_aliased.csv"), CorpusFormat::kCsv, opt);
    REQUIRE(ds.size() == 6);
    CHECK(ds.records()[0].id == "talk001");
    CHECK(ds.records()[0].extras.count("gemini_clarity") == 1);
    CHECK(fixture::error_kind([] { ColumnMapping::from_json(R"({"colour": "x"})"); }) ==
          ErrorKind::kSchema);
  }

  TEST_CASE("csv and jsonl round-trip every field") {
    auto a = talk("a");
    a.clarity_mean = 7.84;
    a.structure_mean = 8.37;
    a.sci_mean = 0.4666666666666667;
    a.topic = Category::kHealth;
    a.topic_agreement = 93.3;
    a.trend_index = 42.0;
    a.readability = 61.25;
    a.extras["gemini_clarity"] = 8.1;
    auto b = talk("b", Date(2019, 2, 3));
    b.transcript = "Line one, \"quoted\".\nLine two.";
    const CorpusDataset ds({validate_talk(a), validate_talk(b)});
    for (auto fmt : {CorpusFormat::kCsv, CorpusFormat::kJsonl}) {
      const auto text = serialize_corpus(ds, fmt);
      const auto back = parse_corpus(text, fmt);
      REQUIRE(back.size() == 2);
      CHECK(back.records()[0] == ds.records()[0]);
      CHECK(back.records()[1] == ds.records()[1]);
      CHECK(serialize_corpus(back, fmt) == text);
    }
  }

  TEST_CASE("format helpers") {
    CHECK(format_from_path("x.jsonl") == CorpusFormat::kJsonl);
    CHECK(format_from_path("x.csv") == CorpusFormat::kCsv);
    CHECK(parse_corpus_format("jsonl") == CorpusFormat::kJsonl);
    CHECK(format_number(0.1) == "0.1");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
