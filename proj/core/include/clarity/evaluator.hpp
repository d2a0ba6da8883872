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

#ifndef CLARITY_EVALUATOR_HPP_
#define CLARITY_EVALUATOR_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "clarity/backend.hpp"
#include "clarity/category.hpp"
#include "clarity/corpus.hpp"
#include "clarity/prompt.hpp"
#include "clarity/run_cache.hpp"

namespace clarity {

struct RunScore {
  int clarity = 0;    // 1..10
  int structure = 0;  // 1..10
  int run_index = 0;
  std::string backend;
  friend bool operator==(const RunScore&, const RunScore&) = default;
};

struct ClassificationRun {
  int sci = 0;  // 0 or 1
  Category category = Category::kSociety;
  int run_index = 0;
  friend bool operator==(const ClassificationRun&, const ClassificationRun&) = default;
};

struct RefusalRecord {
  std::string talk_id;
  std::string backend;
  int run_index = 0;
  std::string excerpt;  // first 200 bytes of the last reply or transport error
};

struct EvaluationOptions {
  int n_runs = 50;
  int max_retries = 3;     // retries after the first attempt
  int concurrency = 4;     // in-flight backend calls
  double quorum = 0.8;     // fraction of requested runs that must succeed
  TemplateKind kind = TemplateKind::kTedQuality;
  const PromptTemplate* prompt = nullptr;  // defaults to the built-in for `kind`
  RunCache* cache = nullptr;               // optional; enables resume
  // score_dataset: TED quality scores of a non-primary backend go to the
  // extras "<backend>_clarity" / "<backend>_structure".
  bool primary = true;
};

struct QualityOutcome {
  std::vector<RunScore> runs;         // ascending run_index
  std::vector<RefusalRecord> refusals;
  bool unevaluated() const { return runs.empty(); }
};

struct ClassificationOutcome {
  std::vector<ClassificationRun> runs;
  std::vector<RefusalRecord> refusals;
  bool unevaluated() const { return runs.empty(); }
};

// Runs `n_runs` independent quality evaluations. Runs already present in the
// cache are reused instead of re-requested. |runs| + |refusals| == n_runs.
QualityOutcome evaluate_quality(const TalkRecord& talk, const ModelBackend& backend,
                                const EvaluationOptions& options);

// Same protocol with the classification template and parser.
ClassificationOutcome classify_talk(const TalkRecord& talk, const ModelBackend& backend,
                                    EvaluationOptions options);

struct EvaluationAggregate {
  double clarity_mean = 0.0;
  double structure_mean = 0.0;
  double clarity_sd = 0.0;    // sample SD; 0 for a single run
  double structure_sd = 0.0;
  int n_runs = 0;
  int n_refusals = 0;
  bool below_quorum = false;  // n_runs < quorum * (n_runs + n_refusals)
};

// Throws Error(kAggregation) for an empty run list.
EvaluationAggregate aggregate_quality(std::span<const RunScore> runs, int n_refusals = 0,
                                      double quorum = 0.8);

struct ClassificationAggregate {
  double sci_mean = 0.0;
  bool sci_label = false;     // sci_mean > 0.5
  bool at_threshold = false;  // sci_mean == 0.5, labelled non-scientific
  Category topic = Category::kSociety;
  double agreement_pct = 0.0;  // 100 * modal count / runs
  bool tied = false;           // several categories share the modal count
  int n_runs = 0;
};

// Modal ties resolve to the lexicographically smallest category name.
ClassificationAggregate aggregate_classification(std::span<const ClassificationRun> runs);

// Per-talk metric values from one scoring configuration.
struct ScoreTable {
  std::string name;                                  // e.g. "gpt4o_ted"
  std::vector<std::string> metrics;                  // e.g. {"clarity", "structure"}
  std::map<std::string, std::vector<double>> rows;   // talk id -> one value per metric
};

struct AlignedTable {
  std::vector<std::string> ids;      // key intersection, ascending
  std::vector<std::string> columns;  // "<table>.<metric>"
  std::vector<std::vector<double>> values;  // values[column][row]
};

// Inner join on talk id across every table.
AlignedTable overlap_join(std::span<const ScoreTable> tables);

// Scores every talk in `dataset` with the backend and writes clarity_mean /
// structure_mean (quality kinds) or sci_mean / topic / topic_agreement
// (classification). Talks that end up unevaluated or below quorum keep their
// previous values and are listed in `flagged`.
struct DatasetScoring {
  CorpusDataset dataset;
  std::vector<std::string> flagged;
  std::vector<RefusalRecord> refusals;
};
DatasetScoring score_dataset(const CorpusDataset& dataset, const ModelBackend& backend,
                             const EvaluationOptions& options);

}  // namespace clarity

#endif  // CLARITY_EVALUATOR_HPP_
