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

#ifndef CLARITY_TESTS_SYNTHETIC_HPP_
#define CLARITY_TESTS_SYNTHETIC_HPP_

#include <cstdint>

#include "clarity/corpus.hpp"

namespace synth {

struct Options {
  std::size_t early = 300;
  std::size_t late = 80;
  std::size_t low_clarity = 10;  // early talks drawn below 5.8
  std::uint64_t seed = 1;
  bool agreement = true;
  bool readability = true;
  bool extras = true;
  bool trend = true;
};

// A scored corpus with planted positive clarity-engagement effects.
clarity::CorpusDataset scored_corpus(const Options& options = {});

}  // namespace synth

#endif  // CLARITY_TESTS_SYNTHETIC_HPP_
