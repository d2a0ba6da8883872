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

#ifndef CLARITY_CORPUS_HPP_
#define CLARITY_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clarity/category.hpp"
#include "clarity/date.hpp"

namespace clarity {

enum class Phase { kEarly, kLate };

std::string_view to_string(Phase phase);
Phase parse_phase(std::string_view text);

struct PhaseWindow {
  Phase label = Phase::kEarly;
  Date first;
  Date last;  // inclusive
};

// Date windows that map a publish date onto a phase. Windows must not overlap.
class PhaseWindows {
 public:
  PhaseWindows() = default;
  explicit PhaseWindows(std::vector<PhaseWindow> windows);

  // Early: 2006-12-25..2013-12-23; Late: calendar years 2017 and 2019.
  static PhaseWindows defaults();

  std::optional<Phase> classify(const Date& date) const;
  const std::vector<PhaseWindow>& windows() const { return windows_; }

 private:
  std::vector<PhaseWindow> windows_;
};

struct TalkRecord {
  std::string id;
  std::string title;
  Date publish_date;
  std::int64_t duration_s = 0;
  std::string transcript;
  std::int64_t views_raw = 0;
  std::int64_t likes_raw = 0;
  Phase phase = Phase::kEarly;

  // Derived fields; absent until the corresponding stage has run.
  std::optional<double> clarity_mean;
  std::optional<double> structure_mean;
  std::optional<double> sci_mean;
  std::optional<Category> topic;
  std::optional<double> topic_agreement;  // percent, (0, 100]
  std::optional<double> trend_index;
  std::optional<double> views_log;
  std::optional<double> likes_log;
  std::optional<double> readability;

  // Additional numeric columns carried through untouched (e.g. scores from
  // other models, keyed by column name).
  std::map<std::string, double> extras;

  // Scientific iff sci_mean > 0.5; exactly 0.5 is non-scientific.
  std::optional<bool> sci_label() const;

  friend bool operator==(const TalkRecord&, const TalkRecord&) = default;
};

// Checks record invariants against the phase windows and returns the record
// with its phase attached. Throws Error listing every violation; the error
// kind is that of the first violation (content, range or phase).
TalkRecord validate_talk(TalkRecord record,
                         const PhaseWindows& windows = PhaseWindows::defaults());

struct Provenance {
  std::string source;
  std::string schema_version = "clarity-corpus/1";
};

// Ordered, id-unique collection of talks. Immutable once constructed.
class CorpusDataset {
 public:
  CorpusDataset() = default;
  // Throws Error(kIntegrity) naming duplicate ids.
  explicit CorpusDataset(std::vector<TalkRecord> records, Provenance provenance = {});

  const std::vector<TalkRecord>& records() const { return records_; }
  const Provenance& provenance() const { return provenance_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const TalkRecord* find(std::string_view id) const;

  // New dataset holding the records for which `keep` is true, same order.
  template <typename Pred>
  CorpusDataset filter(Pred keep) const {
    std::vector<TalkRecord> out;
    for (const auto& r : records_) {
      if (keep(r)) out.push_back(r);
    }
    return CorpusDataset(std::move(out), provenance_);
  }

  CorpusDataset with_records(std::vector<TalkRecord> records) const {
    return CorpusDataset(std::move(records), provenance_);
  }

 private:
  std::vector<TalkRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
  Provenance provenance_;
};

enum class CorpusFormat { kCsv, kJsonl };

CorpusFormat parse_corpus_format(std::string_view text);
// Guess from the file extension (.jsonl/.json -> jsonl, otherwise csv).
CorpusFormat format_from_path(const std::filesystem::path& path);

// Canonical field name -> column name in the source file. Unmapped fields use
// their canonical name.
class ColumnMapping {
 public:
  ColumnMapping() = default;
  explicit ColumnMapping(std::map<std::string, std::string> source_for_field);

  // JSON object {"canonical": "source", ...}; unknown canonical names are a
  // schema error.
  static ColumnMapping from_json(std::string_view json_text);
  static ColumnMapping from_file(const std::filesystem::path& path);

  const std::string& source(const std::string& canonical) const;

 private:
  std::map<std::string, std::string> source_for_field_;
};

// Canonical column names, required ones first.
const std::vector<std::string>& required_columns();
const std::vector<std::string>& optional_columns();

struct LoadOptions {
  ColumnMapping mapping;
  PhaseWindows windows = PhaseWindows::defaults();
};

// Loads and validates every row. Errors: missing required column (schema,
// naming the column), duplicate id (integrity), unparsable row (parse, with
// the row number), dates outside every phase window (phase, listing ids).
CorpusDataset load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          const LoadOptions& options = {});
CorpusDataset parse_corpus(std::string_view text, CorpusFormat format,
                           const LoadOptions& options = {},
                           std::string source = "<memory>");

// Writes canonical column names. CSV emits every optional column that is set
// on at least one record, then extras in name order.
std::string serialize_corpus(const CorpusDataset& dataset, CorpusFormat format);
void write_corpus(const CorpusDataset& dataset, const std::filesystem::path& path,
                  CorpusFormat format);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace clarity

#endif  // CLARITY_CORPUS_HPP_
