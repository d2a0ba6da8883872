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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "clarity/backend.hpp"
#include "clarity/evaluator.hpp"

namespace {

clarity::TalkRecord talk() {
  clarity::TalkRecord r;
  r.id = "bench";
  r.publish_date = clarity::Date(2010, 6, 1);
  r.duration_s = 900;
  std::string text;
  for (int i = 0; i < 400; ++i) text += "We measured the signal and then we tried again. ";
  r.transcript = std::move(text);
  return r;
}

void BM_EvaluateQualityMock(benchmark::State& state) {
  const auto record = talk();
  clarity::MockBackend backend(clarity::ModelBackendDescriptor{}, 42);
  clarity::EvaluationOptions opt;
  opt.n_runs = static_cast<int>(state.range(0));
  opt.concurrency = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(clarity::evaluate_quality(record, backend, opt));
  state.SetItemsProcessed(state.iterations() * opt.n_runs);
}
BENCHMARK(BM_EvaluateQualityMock)->Args({50, 1})->Args({50, 4})->UseRealTime();

void BM_AggregateClassification(benchmark::State& state) {
  std::vector<clarity::ClassificationRun> runs;
  for (int i = 0; i < 15; ++i) {
    runs.push_back({i % 3 == 0 ? 1 : 0, i % 4 == 0 ? clarity::Category::kMind : clarity::Category::kTech, i});
  }
  for (auto _ : state) benchmark::DoNotOptimize(clarity::aggregate_classification(runs));
}
BENCHMARK(BM_AggregateClassification);

}  // namespace
