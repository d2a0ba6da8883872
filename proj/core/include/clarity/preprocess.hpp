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

#ifndef CLARITY_PREPROCESS_HPP_
#define CLARITY_PREPROCESS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/corpus.hpp"

namespace clarity {

// views_log = log10(views_raw), likes_log = log10(likes_raw).
// Throws Error(kTransform) when either count is below 1.
TalkRecord log10_engagement(TalkRecord record);

struct LogTransformResult {
  CorpusDataset dataset;                 // records that transformed
  std::vector<std::string> excluded_ids;  // zero counts
};
LogTransformResult log10_engagement(const CorpusDataset& dataset);

struct Quartiles {
  double q1 = 0.0;
  double q3 = 0.0;
  double fence = 0.0;  // q1 - 1.5 * (q3 - q1)
};

// Quantile by linear interpolation between order statistics at (n - 1) p.
double quantile_linear(std::vector<double> values, double p);

// Lower Tukey fence. Throws Error(kSize) for fewer than four values.
Quartiles iqr_lower_fence(std::span<const double> values);

struct FilterReport {
  double cutoff = 0.0;
  std::size_t n_before = 0;
  std::size_t n_after = 0;
  std::size_t n_excluded = 0;
  std::vector<std::string> excluded_ids;
  double fence = 0.0;  // lower IQR fence of the clarity means before filtering

  std::string to_json() const;
};

struct FilterResult {
  CorpusDataset kept;
  FilterReport report;
};

// Keeps records with clarity_mean >= cutoff. Throws Error(kDependency)
// listing ids that have no clarity_mean.
FilterResult apply_clarity_filter(const CorpusDataset& dataset, double cutoff);

// Vowel-group count with a silent final "e" dropped unless the word ends in
// consonant + "le"; at least 1. Throws Error(kToken) when `word` has no
// alphabetic character.
int count_syllables(std::string_view word);

struct ReadabilityScore {
  double value = 0.0;  // Flesch Reading Ease
  int words = 0;
  int sentences = 0;
  int syllables = 0;
};

// 206.835 - 1.015 (words / sentences) - 84.6 (syllables / words). Sentences
// end at . ! ? followed by whitespace or end of text. Throws Error(kContent)
// when the text has no words.
ReadabilityScore flesch_reading_ease(std::string_view text);

// Per-talk CSV: id,words,sentences,syllables,flesch_reading_ease. Talks whose
// transcript has no words are listed with empty counts.
std::string readability_audit_csv(const CorpusDataset& dataset);

// Bias-corrected sample skewness G1. Throws Error(kSize) for fewer than three
// values and Error(kDegenerate) for zero variance.
double skewness(std::span<const double> values);

}  // namespace clarity

#endif  // CLARITY_PREPROCESS_HPP_
