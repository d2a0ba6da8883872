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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "clarity/special_functions.hpp"
#include "clarity/stats.hpp"

namespace {

using clarity::VariableColumn;

std::vector<VariableColumn> random_columns(std::size_t k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<VariableColumn> cols;
  for (std::size_t j = 0; j < k; ++j) {
    VariableColumn c{"x" + std::to_string(j), std::vector<double>(n)};
    for (auto& v : c.values) v = z(rng);
    cols.push_back(std::move(c));
  }
  return cols;
}

void BM_OlsFit(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  auto cols = random_columns(k + 1, n, 7);
  const VariableColumn y = cols.back();
  cols.pop_back();
  for (auto _ : state) benchmark::DoNotOptimize(clarity::ols_fit(cols, y));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_OlsFit)->Args({2, 1239})->Args({10, 1239})->Args({16, 1239})->Args({10, 20000});

void BM_HierarchicalRegression(benchmark::State& state) {
  const std::size_t n = 1239;
  auto cols = random_columns(5, n, 11);
  clarity::DataFrame frame;
  for (const auto& c : cols) frame.add_numeric(c.name, c.values);
  std::mt19937_64 rng(3);
  std::vector<std::optional<std::string>> topic(n);
  const char* levels[] = {"Cosmos", "Entertainment", "Environment", "Health", "Mind", "Society", "Tech"};
  for (auto& t : topic) t = levels[rng() % 7];
  frame.add_categorical("topic", std::move(topic));

  clarity::RegressionModelSpec spec;
  spec.dependent = "x4";
  spec.steps = {{"x0", "x1"}, {"x0", "x1", "x2", "topic"}, {"x0", "x1", "x2", "topic", "x3"}};
  for (auto _ : state) benchmark::DoNotOptimize(clarity::hierarchical_regression(spec, frame));
}
BENCHMARK(BM_HierarchicalRegression);

void BM_CorrelationMatrix(benchmark::State& state) {
  const auto cols = random_columns(6, static_cast<std::size_t>(state.range(0)), 5);
  const auto method = state.range(1) == 0 ? clarity::CorrelationMethod::kPearson
                                          : clarity::CorrelationMethod::kSpearman;
  for (auto _ : state) benchmark::DoNotOptimize(clarity::correlation_matrix(cols, method));
}
BENCHMARK(BM_CorrelationMatrix)->Args({1239, 0})->Args({1239, 1})->Args({20000, 1});

void BM_IncompleteBeta(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 2.0;
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x >= 1.0) x = 0.001;
    benchmark::DoNotOptimize(clarity::regularized_incomplete_beta(a, 0.5, x));
  }
}
BENCHMARK(BM_IncompleteBeta)->Arg(3)->Arg(30)->Arg(1228);

void BM_TwoTailedT(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    if (t > 40.0) t = 0.0;
    benchmark::DoNotOptimize(clarity::student_t_two_tailed_p(t, 1228.0));
  }
}
BENCHMARK(BM_TwoTailedT);

}  // namespace
