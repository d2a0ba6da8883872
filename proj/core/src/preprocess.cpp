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

#include "clarity/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <fmt/core.h>
#include "json.hpp"

#include "clarity/csv.hpp"
#include "clarity/error.hpp"

namespace clarity {

TalkRecord log10_engagement(TalkRecord record) {
  if (record.views_raw < 1 || record.likes_raw < 1) {
    throw Error(ErrorKind::kTransform, "log transform needs views and likes >= 1",
                {record.id});
  }
  record.views_log = std::log10(static_cast<double>(record.views_raw));
  record.likes_log = std::log10(static_cast<double>(record.likes_raw));
  return record;
}

LogTransformResult log10_engagement(const CorpusDataset& dataset) {
  std::vector<TalkRecord> out;
  std::vector<std::string> excluded;
  for (const auto& r : dataset.records()) {
    if (r.views_raw < 1 || r.likes_raw < 1) {
      excluded.push_back(r.id);
      continue;
    }
    out.push_back(log10_engagement(r));
  }
  return {dataset.with_records(std::move(out)), std::move(excluded)};
}

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::kSize, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

Quartiles iqr_lower_fence(std::span<const double> values) {
  if (values.size() < 4) {
    throw Error(ErrorKind::kSize, fmt::format("IQR fence needs >= 4 values, got {}", values.size()));
  }
  std::vector<double> v(values.begin(), values.end());
  Quartiles q;
  q.q1 = quantile_linear(v, 0.25);
  q.q3 = quantile_linear(std::move(v), 0.75);
  q.fence = q.q1 - 1.5 * (q.q3 - q.q1);
  return q;
}

std::string FilterReport::to_json() const {
  nlohmann::json j;
  j["cutoff"] = cutoff;
  j["fence"] = fence;
  j["n_before"] = n_before;
  j["n_after"] = n_after;
  j["n_excluded"] = n_excluded;
  j["excluded_ids"] = excluded_ids;
  return j.dump(2);
}

FilterResult apply_clarity_filter(const CorpusDataset& dataset, double cutoff) {
  std::vector<std::string> missing;
  std::vector<double> clarity;
  for (const auto& r : dataset.records()) {
    if (!r.clarity_mean) {
      missing.push_back(r.id);
    } else {
      clarity.push_back(*r.clarity_mean);
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kDependency, "records lack clarity_mean", std::move(missing));
  }

  FilterReport report;
  report.cutoff = cutoff;
  report.n_before = dataset.size();
  report.fence = clarity.size() >= 4 ? iqr_lower_fence(clarity).fence : std::nan("");
  std::vector<TalkRecord> kept;
  for (const auto& r : dataset.records()) {
    if (*r.clarity_mean >= cutoff) {
      kept.push_back(r);
    } else {
      report.excluded_ids.push_back(r.id);
    }
  }
  report.n_after = kept.size();
  report.n_excluded = report.excluded_ids.size();
  return {dataset.with_records(std::move(kept)), std::move(report)};
}

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

}  // namespace

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (is_alpha(c)) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (w.empty()) throw Error(ErrorKind::kToken, "token has no letters", {std::string(word)});

  int groups = 0;
  bool prev_vowel = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !prev_vowel) ++groups;
    prev_vowel = v;
  }
  const std::size_t n = w.size();
  if (n >= 2 && w.back() == 'e') {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
    // Dropping a final "e" removes a group only when it follows a consonant.
    if (!consonant_le && !is_vowel(w[n - 2])) --groups;
  }
  return std::max(groups, 1);
}

ReadabilityScore flesch_reading_ease(std::string_view text) {
  ReadabilityScore s;
  bool words_in_sentence = false;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    const auto token = text.substr(start, i - start);

    if (std::any_of(token.begin(), token.end(), is_alpha)) {
      ++s.words;
      s.syllables += count_syllables(token);
      words_in_sentence = true;
    }
    // A token is followed by whitespace or the end, so a terminator at its
    // end closes a sentence.
    const char last = token.back();
    const bool closes = last == '.' || last == '!' || last == '?' ||
                        (token.size() >= 2 && (last == '"' || last == '\'' || last == ')') &&
                         (token[token.size() - 2] == '.' || token[token.size() - 2] == '!' ||
                          token[token.size() - 2] == '?'));
    if (closes && words_in_sentence) {
      ++s.sentences;
      words_in_sentence = false;
    }
  }
  if (words_in_sentence) ++s.sentences;
  if (s.words == 0) throw Error(ErrorKind::kContent, "text has no words");
  s.sentences = std::max(s.sentences, 1);
  s.value = 206.835 - 1.015 * (static_cast<double>(s.words) / s.sentences) -
            84.6 * (static_cast<double>(s.syllables) / s.words);
  return s;
}

double skewness(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw Error(ErrorKind::kSize, "skewness needs >= 3 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (m2 <= 0.0) throw Error(ErrorKind::kDegenerate, "zero variance");
  const double g1 = m3 / std::pow(m2, 1.5);
  const double nn = static_cast<double>(n);
  return g1 * std::sqrt(nn * (nn - 1.0)) / (nn - 2.0);
}

std::string readability_audit_csv(const CorpusDataset& dataset) {
  std::ostringstream os;
  csv::write_row(os, std::vector<std::string>{"id", "words", "sentences", "syllables",
                                              "flesch_reading_ease"});
  for (const auto& r : dataset.records()) {
    std::vector<std::string> row = {r.id, "", "", "", ""};
    try {
      const auto score = flesch_reading_ease(r.transcript);
      row[1] = std::to_string(score.words);
      row[2] = std::to_string(score.sentences);
      row[3] = std::to_string(score.syllables);
      row[4] = fmt::format("{:.4f}", score.value);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kContent) throw;
    }
    csv::write_row(os, row);
  }
  return os.str();
}

}  // namespace clarity
