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
#include <random>

#include "clarity/error.hpp"
#include "clarity/special_functions.hpp"
#include "clarity/stats.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace clarity;

namespace {

using V = std::vector<double>;

VariableColumn col(std::string name, V values, ColumnKind kind = ColumnKind::kContinuous) {
  return {std::move(name), std::move(values), kind};
}

const std::string kX = std::string(kInteractionSeparator);

// y depends on a, b and the group; c is noise; g has three levels.
DataFrame sample_frame(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  const char* levels[] = {"Health", "Society", "Tech"};
  V a, b, c, y;
  std::vector<std::optional<std::string>> g;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(z(rng));
    b.push_back(5 + 2 * z(rng));
    c.push_back(z(rng));
    const int lvl = static_cast<int>(i % 3);
    g.emplace_back(levels[lvl]);
    y.push_back(1.0 + 0.8 * a.back() + 0.3 * b.back() + (lvl == 0 ? 0.7 : 0.0) + z(rng));
  }
  DataFrame f;
  f.add_numeric("a", a);
  f.add_numeric("b", b);
  f.add_numeric("c", c);
  f.add_numeric("y", y);
  f.add_categorical("g", g);
  return f;
}

}  // namespace

TEST_SUITE("regression") {
  TEST_CASE("exact line") {
    std::vector<VariableColumn> X = {col("x", {1, 2, 3, 4})};
    const auto fit = ols_fit(X, col("y", {2, 4, 6, 8}));
    CHECK(fit.b[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::fabs(fit.b[0]) < 1e-13);
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.names == std::vector<std::string>{"(Intercept)", "x"});
  }

  TEST_CASE("three-point fit") {
    std::vector<VariableColumn> X = {col("x", {0, 1, 2})};
    const auto fit = ols_fit(X, col("y", {1, 2, 2}));
    CHECK(fit.b[0] == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
    CHECK(fit.b[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fit.r2 == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(fit.df_resid == 1);
    CHECK(fit.df_model == 1);
    CHECK(fit.f == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.rss == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }

  TEST_CASE("standard errors, t and p") {
    std::vector<VariableColumn> X = {col("x", {1, 2, 3, 4, 5, 6})};
    const auto fit = ols_fit(X, col("y", {1.1, 1.9, 3.2, 3.9, 5.3, 5.8}));
    // slope SE = sqrt(s^2 / Sxx), Sxx = 17.5
    const double s2 = fit.rss / 4.0;
    CHECK(fit.se[1] == doctest::Approx(std::sqrt(s2 / 17.5)).epsilon(1e-12));
    CHECK(fit.t[1] == doctest::Approx(fit.b[1] / fit.se[1]).epsilon(1e-12));
    CHECK(fit.p[1] == doctest::Approx(student_t_two_tailed_p(fit.t[1], 4)).epsilon(1e-12));
    CHECK(fit.adj_r2 == doctest::Approx(1 - (1 - fit.r2) * 5.0 / 4.0).epsilon(1e-12));
    CHECK(fit.f == doctest::Approx(fit.t[1] * fit.t[1]).epsilon(1e-9));
  }

  TEST_CASE("rank deficiency names the dependent columns") {
    std::vector<VariableColumn> X = {col("x1", {1, 2, 3, 4, 5}), col("x2", {2, 4, 6, 8, 10}),
                                     col("x3", {1, 0, 1, 0, 2})};
    try {
      ols_fit(X, col("y", {1, 3, 2, 5, 4}));
      FAIL("expected collinearity error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kCollinearity);
      REQUIRE(e.details().size() == 1);
      CHECK((e.details()[0] == "x1" || e.details()[0] == "x2"));
    }
    std::vector<VariableColumn> constant = {col("k", {3, 3, 3, 3})};
    CHECK(fixture::error_kind([&] { ols_fit(constant, col("y", {1, 2, 3, 5})); }) ==
          ErrorKind::kCollinearity);
  }

  TEST_CASE("size and degenerate errors") {
    std::vector<VariableColumn> X = {col("x", {1, 2})};
    CHECK(fixture::error_kind([&] { ols_fit(X, col("y", {1, 2})); }) == ErrorKind::kSize);
    std::vector<VariableColumn> X3 = {col("x", {1, 2, 3})};
    CHECK(fixture::error_kind([&] { ols_fit(X3, col("y", {4, 4, 4})); }) == ErrorKind::kDegenerate);
  }

  TEST_CASE("sole predictor beta equals pearson r") {
    const V x = {1.5, 2.0, 3.7, 4.1, 5.9, 7.2, 8.8};
    const V y = {2.1, 1.8, 4.0, 3.3, 6.5, 6.1, 9.9};
    std::vector<VariableColumn> X = {col("x", x)};
    const auto fit = ols_fit(X, col("y", y));
    const auto beta = standardized_betas(fit, X, col("y", y));
    CHECK(std::fabs(beta[0] - pearson(x, y)) < 1e-10);
  }

  TEST_CASE("rescaling a predictor leaves its beta unchanged") {
    auto f = sample_frame(60, 3);
    std::vector<VariableColumn> X = {f.numeric("a"), f.numeric("b")};
    const auto& y = f.numeric("y");
    const auto beta = standardized_betas(ols_fit(X, y), X, y);
    for (auto& v : X[1].values) v *= 1000.0;
    const auto beta_ms = standardized_betas(ols_fit(X, y), X, y);
    CHECK(std::fabs(beta[0] - beta_ms[0]) < 1e-10);
    CHECK(std::fabs(beta[1] - beta_ms[1]) < 1e-10);
  }

  TEST_CASE("interaction columns are raw products") {
    DataFrame f;
    f.add_numeric("Science", {0, 1, 1, 0}, ColumnKind::kDummy);
    f.add_numeric("Clarity", {7.5, 8.0, 6.5, 9.0});
    f.add_categorical("Topic", {"Health", "Society", "Health", "Tech"});
    std::vector<std::pair<std::string, std::string>> pairs = {{"Science", "Clarity"},
                                                               {"Topic", "Clarity"}};
    const auto cols = interaction_terms(pairs, f, "Society");
    REQUIRE(cols.size() == 3);
    CHECK(cols[0].name == "Science" + kX + "Clarity");
    CHECK(cols[0].values == V{0, 8.0, 6.5, 0});
    CHECK(cols[0].kind == ColumnKind::kContinuous);
    CHECK(cols[1].name == "Health" + kX + "Clarity");
    CHECK(cols[1].values == V{7.5, 0, 6.5, 0});
    CHECK(cols[2].name == "Tech" + kX + "Clarity");
    std::vector<std::pair<std::string, std::string>> missing = {{"Science", "Nope"}};
    CHECK(fixture::error_kind([&] { interaction_terms(missing, f, "Society"); }) == ErrorKind::kSpec);
  }

  TEST_CASE("spec validation") {
    RegressionModelSpec s;
    s.dependent = "y";
    s.steps = {{"a"}, {"a", "b"}};
    s.validate();
    s.steps = {{"a", "b"}, {"b"}};
    CHECK(fixture::error_kind([&] { s.validate(); }) == ErrorKind::kSpec);
    s.steps = {{"a"}, {"a"}};
    CHECK(fixture::error_kind([&] { s.validate(); }) == ErrorKind::kSpec);
    s.steps = {{"a", "y"}};
    CHECK(fixture::error_kind([&] { s.validate(); }) == ErrorKind::kSpec);
    s.steps = {};
    CHECK(fixture::error_kind([&] { s.validate(); }) == ErrorKind::kSpec);
    s.steps = {{"a", "a"}};
    CHECK(fixture::error_kind([&] { s.validate(); }) == ErrorKind::kSpec);
  }

  TEST_CASE("spec JSON: blocks accumulate, steps are taken verbatim") {
    const auto spec = RegressionModelSpec::from_json(fixture::read(fixture::path("three_step.json")));
    CHECK(spec.dependent == "Likes");
    REQUIRE(spec.steps.size() == 3);
    CHECK(spec.steps[2] == std::vector<std::string>{"TED_TrendIndex", "Duration (s)", "Science", "Clarity"});
    CHECK(spec.step_labels == std::vector<std::string>{"I", "II", "III"});
    const auto back = RegressionModelSpec::from_json(spec.to_json());
    CHECK(back.steps == spec.steps);
    CHECK(back.reference == spec.reference);

    const auto steps = RegressionModelSpec::from_json(
        R"({"dependent": "y", "steps": [["a"], ["a", "b x c"]], "reference": "Tech"})");
    CHECK(steps.steps[1][1] == "b x c");
    CHECK(steps.reference == "Tech");
    CHECK(fixture::error_kind([] { RegressionModelSpec::from_json("{"); }) == ErrorKind::kParse);
    CHECK(fixture::error_kind([] { RegressionModelSpec::from_json(R"({"dependent": "y"})"); }) ==
          ErrorKind::kSpec);
    CHECK(fixture::error_kind([] {
            RegressionModelSpec::from_json(R"({"dependent": "y", "steps": [["a"], ["b"]]})");
          }) == ErrorKind::kSpec);
  }

  TEST_CASE("one-step hierarchy equals a plain fit") {
    const auto f = sample_frame(50, 5);
    RegressionModelSpec s;
    s.dependent = "y";
    s.steps = {{"a", "b"}};
    const auto h = hierarchical_regression(s, f);
    std::vector<VariableColumn> X = {f.numeric("a"), f.numeric("b")};
    const auto fit = ols_fit(X, f.numeric("y"));
    REQUIRE(h.steps.size() == 1);
    CHECK(h.steps[0].r2 == fit.r2);
    CHECK(h.steps[0].delta_r2 == fit.r2);
    CHECK(h.steps[0].intercept == fit.b[0]);
    CHECK(h.steps[0].predictors[1].b == fit.b[2]);
    CHECK(h.steps[0].f == fit.f);
    CHECK(h.steps[0].label == "1");
    CHECK(h.n == 50);
  }

  TEST_CASE("nested steps: R2 non-decreasing and F change") {
    const auto f = sample_frame(90, 8);
    RegressionModelSpec s;
    s.dependent = "y";
    s.steps = {{"a"}, {"a", "c"}, {"a", "c", "g"}, {"a", "c", "g", "b", "g" + kX + "a"}};
    const auto h = hierarchical_regression(s, f);
    REQUIRE(h.steps.size() == 4);
    for (std::size_t i = 1; i < h.steps.size(); ++i) {
      const auto& prev = h.steps[i - 1];
      const auto& cur = h.steps[i];
      CHECK(cur.r2 >= prev.r2);
      CHECK(cur.delta_r2 == doctest::Approx(cur.r2 - prev.r2).epsilon(1e-15));
      CHECK(cur.delta_r2 >= 0.0);
      const double expected = (cur.delta_r2 / cur.df_change) / ((1 - cur.r2) / cur.df_resid);
      CHECK(cur.f_change == doctest::Approx(expected).epsilon(1e-12));
      CHECK(cur.f_change_p ==
            doctest::Approx(f_upper_p(expected, cur.df_change, cur.df_resid)).epsilon(1e-12));
    }
    CHECK(h.steps[2].df_change == 2);  // g expands to Health, Tech
    CHECK(h.steps[3].df_change == 3);
    CHECK(h.steps[2].predictors[2].name == "Health");
    CHECK(h.steps[2].predictors[2].term == "g");
    CHECK(h.steps[3].predictors.back().name == "Tech" + kX + "a");
    CHECK(h.reference == "Society");
  }

  TEST_CASE("listwise deletion across every step") {
    auto f = sample_frame(40, 2);
    auto a = f.numeric("a").values;
    a[3] = std::numeric_limits<double>::quiet_NaN();
    DataFrame g;
    g.add_numeric("a", a);
    g.add_numeric("b", f.numeric("b").values);
    g.add_numeric("y", f.numeric("y").values);
    RegressionModelSpec s;
    s.dependent = "y";
    s.steps = {{"b"}, {"b", "a"}};
    const auto h = hierarchical_regression(s, g);
    CHECK(h.n == 39);
    CHECK(h.n_dropped == 1);
    CHECK(h.steps[0].n == 39);
    s.steps = {{"b"}, {"b", "missing"}};
    CHECK(fixture::error_kind([&] { hierarchical_regression(s, g); }) == ErrorKind::kSpec);
  }
}
