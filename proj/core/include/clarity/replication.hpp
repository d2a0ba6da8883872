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

#ifndef CLARITY_REPLICATION_HPP_
#define CLARITY_REPLICATION_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/corpus.hpp"
#include "clarity/preprocess.hpp"
#include "clarity/report.hpp"
#include "clarity/stats.hpp"

namespace clarity {

// Analysis column names used by build_frame.
namespace col {
inline constexpr const char* kTrend = "TED_TrendIndex";
inline constexpr const char* kClarity = "Clarity";
inline constexpr const char* kStructure = "Structure";
inline constexpr const char* kDuration = "Duration (s)";
inline constexpr const char* kViews = "Views";
inline constexpr const char* kLikes = "Likes";
inline constexpr const char* kScience = "Science";
inline constexpr const char* kTopic = "Topic";
inline constexpr const char* kReadability = "Readability";
}  // namespace col

// One row per record. Missing values are NaN (numeric) or nullopt (Topic).
// Views/Likes use the stored log values, else log10 of the raw counts when
// both are >= 1. Science is the 0/1 scientific label. Extras become numeric
// columns under their own names.
DataFrame build_frame(const CorpusDataset& dataset);

// Extras whose name mentions "clarity" or "structure" (other models or prompts).
std::vector<std::string> score_extra_columns(const CorpusDataset& dataset);

RegressionModelSpec three_step_spec(std::string dependent, std::string reference = "Society");
// Three-step spec plus a fourth step with Science × Clarity and Topic × Clarity.
RegressionModelSpec interaction_spec(std::string dependent, std::string reference = "Society");

enum class CutoffMode { kFixed, kIqr };

struct CutoffRule {
  CutoffMode mode = CutoffMode::kFixed;
  double value = 5.8;

  // "iqr" or a number.
  static CutoffRule parse(std::string_view text);
  // The fixed value, or the lower IQR fence of the dataset's clarity means.
  double resolve(const CorpusDataset& dataset) const;
};

struct ReplicationOptions {
  CutoffRule early_cutoff{CutoffMode::kFixed, 5.8};
  CutoffRule late_cutoff{CutoffMode::kFixed, 7.21};
  std::string reference = "Society";
  int histogram_bins = 20;
  int comparison_year = 2010;
};

struct CategoryRow {
  std::string label;
  std::size_t n = 0;
  double clarity_mean = 0.0;
  double clarity_sd = 0.0;
  double likes_mean = 0.0;
  double views_mean = 0.0;
  double r_likes = 0.0;
  double p_likes = 1.0;
  double r_views = 0.0;
  double p_views = 1.0;
};

struct CrossTabRow {
  std::string topic;
  std::size_t non_scientific = 0;
  std::size_t scientific = 0;
};

struct ReplicationResults {
  FilterReport early_filter;
  std::optional<FilterReport> late_filter;
  std::size_t unfiltered_n = 0;

  std::vector<Descriptive> engagement;      // duration, views, likes
  std::vector<Descriptive> scores;          // clarity, structure
  std::vector<StabilityRow> stability;      // empty without agreement data
  std::vector<CrossTabRow> science_topic;
  std::optional<CorrelationMatrix> pearson;
  std::optional<CorrelationMatrix> spearman;
  std::optional<HierarchicalResult> likes;
  std::optional<HierarchicalResult> views;
  std::optional<HierarchicalResult> interactions;
  std::optional<CorrelationMatrix> model_comparison;
  std::vector<YearStats> yearly;
  std::optional<CorrelationMatrix> late_phase;
  std::optional<CorrelationMatrix> readability;
  std::vector<CategoryRow> categories;
  std::optional<CorrelationMatrix> unfiltered_pearson;
  std::optional<HierarchicalResult> unfiltered_likes;
  Histogram clarity_histogram;
  RenderedTable clarity_by_year;

  // "<section>: <reason>" for analyses whose inputs are absent.
  std::vector<std::string> skipped;
};

// Runs every analysis on a scored dataset. Early-phase talks are filtered at
// the early cutoff; yearly summaries combine filtered early talks with all
// late talks. Throws Error(kDependency) if early talks lack clarity scores.
ReplicationResults replicate(const CorpusDataset& dataset, const ReplicationOptions& options = {});

struct OutputFile {
  std::string name;
  std::string content;
  friend bool operator==(const OutputFile&, const OutputFile&) = default;
};

// Tables (in `format`), full-precision analysis JSON, filter reports,
// distribution CSVs and a manifest. Pure and deterministic.
std::vector<OutputFile> render_replication(const ReplicationResults& results, TableFormat format);

RenderedTable category_table(std::span<const CategoryRow> rows, std::string id, std::string title);
RenderedTable science_topic_table(std::span<const CrossTabRow> rows, std::string id,
                                  std::string title);

}  // namespace clarity

#endif  // CLARITY_REPLICATION_HPP_
