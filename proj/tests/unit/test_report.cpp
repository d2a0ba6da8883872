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

#include <cmath>
#include <limits>

#include "clarity/error.hpp"
#include "clarity/report.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace clarity;

namespace {

TalkRecord talk(std::string id, Date date, double clarity, double structure) {
  TalkRecord r;
  r.id = std::move(id);
  r.publish_date = date;
  r.duration_s = 100;
  r.transcript = "x";
  r.clarity_mean = clarity;
  r.structure_mean = structure;
  return r;
}

RenderedTable sample_table() {
  RenderedTable t;
  t.id = "5";
  t.title = "Correlations";
  t.headers = {"Variable", "a|b", "c"};
  t.rows = {{"Clarity", ".373**", "1"}, {"Views, log", "", "-.255*"}};
  t.legend = "Note. N = 1,239.";
  return t;
}

HierarchicalResult sample_result() {
  HierarchicalResult h;
  h.dependent = "Likes";
  h.reference = "Society";
  h.n = 1239;
  RegressionStepResult s1;
  s1.label = "I";
  s1.predictors = {{"TED_TrendIndex", "TED_TrendIndex", 0.0123456, 0.32849, 0.001, 12.3, 0.0000001}};
  s1.r2 = 0.1109;
  s1.delta_r2 = 0.1109;
  s1.f = 77.12;
  s1.f_p = 1e-20;
  RegressionStepResult s2 = s1;
  s2.label = "II";
  s2.predictors.push_back({"Health", "Topic", 0.1, 0.05, 0.03, 3.33, 0.003});
  s2.predictors.push_back({"Science", "Science", -0.02, -0.011, 0.02, -1.0, 0.32});
  s2.r2 = 0.195;
  s2.delta_r2 = 0.0841;
  h.steps = {s1, s2};
  return h;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("cell formatting") {
    CHECK(format_correlation(0.3731) == ".373");
    CHECK(format_correlation(-0.2549) == "-.255");
    CHECK(format_correlation(1.0) == "1.000");
    CHECK(format_correlation(-0.0001) == ".000");
    CHECK(format_fixed(7.8449, 2) == "7.84");
    CHECK(format_fixed(-0.0001, 2) == "0.00");
    CHECK(format_fixed(std::numeric_limits<double>::quiet_NaN(), 2) == "n/a");
    CHECK(regression_stars(0.003) == "**");
    CHECK(regression_stars(0.0009) == "***");
    CHECK(regression_stars(0.049) == "*");
    CHECK(regression_stars(0.05) == "");
    CHECK(correlation_stars(0.0009) == "**");
    CHECK(correlation_stars(0.02) == "*");
    CHECK(correlation_stars(0.2) == "");
  }

  TEST_CASE("markdown rendering") {
    const auto md = render(sample_table(), TableFormat::kMarkdown);
    CHECK(md.rfind("### Table 5. Correlations\n", 0) == 0);
    CHECK(md.find("| Variable | a\\|b | c |") != std::string::npos);
    CHECK(md.find("| --- | ---: | ---: |") != std::string::npos);
    CHECK(md.find("Note. N = 1,239.") != std::string::npos);
    CHECK(md == render(sample_table(), TableFormat::kMarkdown));
  }

  TEST_CASE("csv and json round-trip") {
    const auto t = sample_table();
    const auto csv = render(t, TableFormat::kCsv);
    const auto back = table_from_csv(csv);
    CHECK(back.headers == t.headers);
    CHECK(back.rows == t.rows);
    CHECK(render(back, TableFormat::kCsv) == csv);

    const auto json = render(t, TableFormat::kJson);
    CHECK(table_from_json(json) == t);
    CHECK(render(table_from_json(json), TableFormat::kJson) == json);
  }

  TEST_CASE("non-rectangular tables are rejected") {
    auto t = sample_table();
    t.rows[1].pop_back();
    CHECK(fixture::error_kind([&] { t.validate(); }) == ErrorKind::kRender);
    CHECK(fixture::error_kind([&] { render(t, TableFormat::kCsv); }) == ErrorKind::kRender);
  }

  TEST_CASE("formats and file names") {
    CHECK(parse_table_format("md") == TableFormat::kMarkdown);
    CHECK(parse_table_format("markdown") == TableFormat::kMarkdown);
    CHECK(parse_table_format("json") == TableFormat::kJson);
    CHECK(fixture::error_kind([] { parse_table_format("xlsx"); }) == ErrorKind::kConfig);
    CHECK(table_file_name("6", "Likes", TableFormat::kMarkdown) == "table_6_likes.md");
    CHECK(table_file_name("3", "", TableFormat::kCsv) == "table_3.csv");
    CHECK(extension(TableFormat::kJson) == "json");
  }

  TEST_CASE("descriptives") {
    DataFrame f;
    f.add_numeric("x", {1, 2, std::numeric_limits<double>::quiet_NaN(), 5});
    f.add_numeric("k", {3, 3, 3, 3});
    f.add_numeric("empty", std::vector<double>(4, std::numeric_limits<double>::quiet_NaN()));
    const std::vector<std::string> names = {"x", "k"};
    const auto d = describe(f, names);
    CHECK(d[0].n == 3);
    CHECK(d[0].min == 1);
    CHECK(d[0].max == 5);
    CHECK(d[0].mean == doctest::Approx(8.0 / 3.0));
    CHECK(d[1].sd == 0.0);
    const auto t = descriptives_table(d, "2", "Descriptives");
    CHECK(t.rows[0] == std::vector<std::string>{"x", "3", "1.00", "5.00", "2.67", "2.08"});
    const std::vector<std::string> bad = {"empty"};
    CHECK(fixture::error_kind([&] { describe(f, bad); }) == ErrorKind::kContent);
    const std::vector<std::string> unknown = {"nope"};
    CHECK(fixture::error_kind([&] { describe(f, unknown); }) == ErrorKind::kSpec);
  }

  TEST_CASE("yearly summaries") {
    const CorpusDataset one({talk("a", Date(2010, 1, 5), 7.0, 8.0), talk("b", Date(2010, 3, 5), 8.0, 9.0)});
    const auto rows = summarize_years(one);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].year == 2010);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].clarity_mean == 7.5);
    CHECK(rows[0].structure_sd == doctest::Approx(std::sqrt(0.5)));

    const CorpusDataset two({talk("a", Date(2008, 1, 5), 7.0, 8.0), talk("b", Date(2009, 3, 5), 8.0, 9.0),
                             talk("c", Date(2009, 4, 5), 6.0, 7.0)});
    CHECK(summarize_years(two).size() == 1);
    CHECK(yearly_table(summarize_years(two), "9", "By year").rows.size() == 1);
  }

  TEST_CASE("classification stability") {
    auto with = [](std::string id, Category c, double pct) {
      auto r = talk(std::move(id), Date(2010, 1, 1), 7, 8);
      r.topic = c;
      r.topic_agreement = pct;
      return r;
    };
    const CorpusDataset ds({with("a", Category::kTech, 100), with("b", Category::kTech, 80),
                            with("c", Category::kMind, 60), talk("d", Date(2010, 1, 1), 7, 8)});
    const auto rows = summarize_stability(ds);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].category == "Mind");
    CHECK(rows[0].mean_agreement == 60.0);
    CHECK(rows[1].category == "Tech");
    CHECK(rows[1].mean_agreement == 90.0);
    CHECK(rows[1].sd == doctest::Approx(std::sqrt(200.0)));
    CHECK(rows[2].category == "Total");
    CHECK(rows[2].mean_agreement == 80.0);
    CHECK(rows[2].n == 3);

    const CorpusDataset unanimous({with("a", Category::kTech, 100), with("b", Category::kHealth, 100)});
    for (const auto& r : summarize_stability(unanimous)) CHECK(r.mean_agreement == 100.0);
  }

  TEST_CASE("correlation table") {
    CorrelationMatrix m;
    m.names = {"Clarity", "Likes"};
    m.r = {{1, 0.3731}, {0.3731, 1}};
    m.p = {{0, 0.001}, {0.001, 0}};
    m.n = 1239;
    const auto t = correlation_table(m, "5", "Pearson");
    CHECK(t.headers == std::vector<std::string>{"Variable", "Clarity", "Likes"});
    CHECK(t.rows[0] == std::vector<std::string>{"Clarity", "1", ".373**"});
    CHECK(t.rows[1] == std::vector<std::string>{"Likes", "", "1"});
    CHECK(t.legend.find("N = 1,239") != std::string::npos);
    const std::vector<std::string> labels = {"A"};
    CHECK(fixture::error_kind([&] { correlation_table(m, "5", "x", labels); }) == ErrorKind::kRender);
  }

  TEST_CASE("regression table") {
    const auto t = regression_table(sample_result(), "6", "Likes");
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0][0] == "Step I");
    CHECK(t.rows[0][2] == "0.0123");
    CHECK(t.rows[0][3] == "0.328");
    CHECK(t.rows[0][4] == "12.30***");
    CHECK(t.rows[0][5] == "<.001");
    CHECK(t.rows[0][6] == "77.12***");
    CHECK(t.rows[0][7] == "0.111");
    CHECK(t.rows[0][8] == "");
    CHECK(t.rows[1][0] == "Step II");
    CHECK(t.rows[1][8] == "0.084");
    CHECK(t.rows[2][1] == "Health (vs. Society)");
    CHECK(t.rows[2][4] == "3.33**");
    CHECK(t.rows[2][5] == "0.003");
    CHECK(t.rows[2][6] == "");
    CHECK(t.rows[3][1] == "Science");
    CHECK(t.legend.find("N = 1,239") != std::string::npos);
  }

  TEST_CASE("analysis JSON reproduces the table") {
    const auto h = sample_result();
    const auto json = analysis_json(h);
    const auto back = hierarchical_from_json(json);
    CHECK(analysis_json(back) == json);
    CHECK(table_from_analysis_json(json, "6", "Likes") == regression_table(h, "6", "Likes"));

    CorrelationMatrix m;
    m.names = {"a", "b"};
    m.r = {{1, 0.5}, {0.5, 1}};
    m.p = {{0, std::numeric_limits<double>::quiet_NaN()}, {0.2, 0}};
    m.n = 10;
    const auto mj = analysis_json(m);
    CHECK(std::isnan(correlation_from_json(mj).p[0][1]));
    CHECK(analysis_json(correlation_from_json(mj)) == mj);
    CHECK(fixture::error_kind([] { table_from_analysis_json(R"({"kind": "anova"})", "1", "x"); }) ==
          ErrorKind::kRender);
  }

  TEST_CASE("histograms") {
    const std::vector<double> v = {1, 2, 3};
    const auto h = histogram(v, 3, 0.5, 3.5);
    CHECK(h.counts == std::vector<std::size_t>{1, 1, 1});
    CHECK(h.edges.size() == 4);
    const auto d = histogram(v, 2);
    CHECK(d.counts == std::vector<std::size_t>{1, 2});  // last bin closed
    const std::vector<double> same = {4, 4};
    CHECK(histogram(same, 1).counts == std::vector<std::size_t>{2});
    CHECK(fixture::error_kind([&] { histogram(v, 0); }) == ErrorKind::kRange);
    std::vector<double> many;
    for (int i = 0; i < 997; ++i) many.push_back(std::sin(i) * 10);
    std::size_t total = 0;
    for (auto c : histogram(many, 17).counts) total += c;
    CHECK(total == many.size());
    CHECK(histogram_table(h, "h", "Hist").rows.size() == 3);
  }

  TEST_CASE("yearly density export") {
    const CorpusDataset ds({talk("a", Date(2008, 1, 5), 7.0, 8.0), talk("b", Date(2008, 3, 5), 8.0, 9.0),
                            talk("c", Date(2009, 4, 5), 6.0, 7.0)});
    const auto t = yearly_density_table(ds, 4, "d", "Density");
    CHECK(t.headers == std::vector<std::string>{"year", "n", "bin_lo", "bin_hi", "count", "density"});
    CHECK(t.rows.size() == 8);
  }
}
