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

#include <benchmark/benchmark.h>

#include "clarity/preprocess.hpp"

namespace {

void BM_FleschReadingEase(benchmark::State& state) {
  std::string text;
  while (text.size() < static_cast<std::size_t>(state.range(0))) {
    text += "Education changes how communities imagine their future. It is rhythmic and strange. ";
  }
  for (auto _ : state) benchmark::DoNotOptimize(clarity::flesch_reading_ease(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_FleschReadingEase)->Arg(1 << 12)->Arg(1 << 15);

void BM_IqrLowerFence(benchmark::State& state) {
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>((i * 7919) % 1000) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(clarity::iqr_lower_fence(v));
}
BENCHMARK(BM_IqrLowerFence)->Arg(1280);

}  // namespace
