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

#include "clarity/evaluator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/core.h>

#include "clarity/error.hpp"

namespace clarity {
namespace {

// Outcome of one run after the retry policy settled it.
template <typename Parsed>
struct Settled {
  int run_index = 0;
  std::optional<Parsed> parsed;
  std::string last_raw;
};

std::string excerpt(std::string_view text) {
  return std::string(text.substr(0, std::min<std::size_t>(text.size(), 200)));
}

template <typename Parsed, typename ParseFn>
std::vector<Settled<Parsed>> run_protocol(const TalkRecord& talk, const ModelBackend& backend,
                                          const EvaluationOptions& options, ParseFn parse) {
  if (options.n_runs < 1) throw Error(ErrorKind::kRange, "n_runs must be >= 1");
  const PromptTemplate& tmpl =
      options.prompt != nullptr ? *options.prompt : PromptTemplate::builtin(options.kind);
  const std::string prompt = render_prompt(tmpl, talk.transcript);
  const std::string digest = fmt::format("{:016x}", fnv1a(prompt));
  const auto& desc = backend.descriptor();

  std::vector<Settled<Parsed>> settled(static_cast<std::size_t>(options.n_runs));
  std::vector<int> pending;
  std::map<int, RunCacheEntry> cached;
  if (options.cache != nullptr) cached = options.cache->valid_runs(talk.id, desc.name, tmpl.kind());
  for (int i = 0; i < options.n_runs; ++i) {
    settled[static_cast<std::size_t>(i)].run_index = i;
    auto it = cached.find(i);
    if (it != cached.end()) {
      settled[static_cast<std::size_t>(i)].last_raw = it->second.raw_response;
      if constexpr (std::is_same_v<Parsed, QualityPair>) {
        settled[static_cast<std::size_t>(i)].parsed = it->second.quality;
      } else {
        settled[static_cast<std::size_t>(i)].parsed = it->second.classification;
      }
      continue;
    }
    pending.push_back(i);
  }
  if (pending.empty()) return settled;

  auto run_one = [&](int run_index) {
    auto& slot = settled[static_cast<std::size_t>(run_index)];
    int attempts = 0;
    for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
      ++attempts;
      try {
        slot.last_raw = backend.complete(
            {tmpl.kind(), talk.transcript, prompt, run_index, attempt});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kTransport) throw;
        slot.last_raw = e.what();
        continue;
      }
      try {
        slot.parsed = parse(slot.last_raw);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kParse) throw;
      }
    }
    if (options.cache != nullptr) {
      RunCacheEntry entry;
      entry.talk_id = talk.id;
      entry.backend = desc.name;
      entry.template_kind = tmpl.kind();
      entry.run_index = run_index;
      entry.raw_response = slot.last_raw;
      if constexpr (std::is_same_v<Parsed, QualityPair>) {
        entry.quality = slot.parsed;
      } else {
        entry.classification = slot.parsed;
      }
      entry.timestamp = options.cache->now();
      entry.sampling = desc.sampling.to_json();
      entry.attempts = attempts;
      entry.request_digest = digest;
      options.cache->append(std::move(entry));
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(options.concurrency, 1)), 1, pending.size());
  if (workers == 1) {
    for (int i : pending) run_one(i);
    return settled;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < pending.size(); k = next.fetch_add(1)) {
          try {
            run_one(pending[k]);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return settled;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

QualityOutcome evaluate_quality(const TalkRecord& talk, const ModelBackend& backend,
                                const EvaluationOptions& options) {
  if (options.kind == TemplateKind::kClassification) {
    throw Error(ErrorKind::kSpec, "evaluate_quality needs a quality template");
  }
  auto settled = run_protocol<QualityPair>(talk, backend, options, parse_quality_response);
  QualityOutcome out;
  for (const auto& s : settled) {
    if (s.parsed) {
      out.runs.push_back({s.parsed->clarity, s.parsed->structure, s.run_index,
                          backend.descriptor().name});
    } else {
      out.refusals.push_back({talk.id, backend.descriptor().name, s.run_index, excerpt(s.last_raw)});
    }
  }
  return out;
}

ClassificationOutcome classify_talk(const TalkRecord& talk, const ModelBackend& backend,
                                    EvaluationOptions options) {
  options.kind = TemplateKind::kClassification;
  if (options.prompt != nullptr && options.prompt->kind() != TemplateKind::kClassification) {
    throw Error(ErrorKind::kSpec, "classify_talk needs a classification template");
  }
  auto settled =
      run_protocol<ClassificationPair>(talk, backend, options, parse_classification_response);
  ClassificationOutcome out;
  for (const auto& s : settled) {
    if (s.parsed) {
      out.runs.push_back({s.parsed->sci, s.parsed->category, s.run_index});
    } else {
      out.refusals.push_back({talk.id, backend.descriptor().name, s.run_index, excerpt(s.last_raw)});
    }
  }
  return out;
}

EvaluationAggregate aggregate_quality(std::span<const RunScore> runs, int n_refusals,
                                      double quorum) {
  if (runs.empty()) throw Error(ErrorKind::kAggregation, "no runs to aggregate");
  // Sort the values so the floating-point sums do not depend on run order.
  std::vector<double> clarity, structure;
  clarity.reserve(runs.size());
  structure.reserve(runs.size());
  for (const auto& r : runs) {
    if (r.clarity < 1 || r.clarity > 10 || r.structure < 1 || r.structure > 10) {
      throw Error(ErrorKind::kRange, "run score outside 1..10",
                  {fmt::format("run {}", r.run_index)});
    }
    clarity.push_back(r.clarity);
    structure.push_back(r.structure);
  }
  std::sort(clarity.begin(), clarity.end());
  std::sort(structure.begin(), structure.end());

  EvaluationAggregate a;
  a.n_runs = static_cast<int>(runs.size());
  a.n_refusals = n_refusals;
  a.clarity_mean = mean_of(clarity);
  a.structure_mean = mean_of(structure);
  a.clarity_sd = sample_sd(clarity, a.clarity_mean);
  a.structure_sd = sample_sd(structure, a.structure_mean);
  const double requested = static_cast<double>(a.n_runs + n_refusals);
  a.below_quorum = static_cast<double>(a.n_runs) < quorum * requested;
  return a;
}

ClassificationAggregate aggregate_classification(std::span<const ClassificationRun> runs) {
  if (runs.empty()) throw Error(ErrorKind::kAggregation, "no classification runs to aggregate");
  std::array<int, kAllCategories.size()> counts{};
  int sci_sum = 0;
  for (const auto& r : runs) {
    if (r.sci != 0 && r.sci != 1) {
      throw Error(ErrorKind::kRange, "scientific flag must be 0 or 1",
                  {fmt::format("run {}", r.run_index)});
    }
    sci_sum += r.sci;
    ++counts[static_cast<std::size_t>(r.category)];
  }
  ClassificationAggregate a;
  a.n_runs = static_cast<int>(runs.size());
  a.sci_mean = static_cast<double>(sci_sum) / static_cast<double>(runs.size());
  a.sci_label = a.sci_mean > 0.5;
  a.at_threshold = 2 * sci_sum == a.n_runs;

  // kAllCategories is in name order, so the first maximum is the tie-break.
  int best = -1;
  int n_best = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > best) {
      best = counts[i];
      a.topic = kAllCategories[i];
      n_best = 1;
    } else if (counts[i] == best) {
      ++n_best;
    }
  }
  a.tied = n_best > 1;
  a.agreement_pct = 100.0 * static_cast<double>(best) / static_cast<double>(runs.size());
  return a;
}

AlignedTable overlap_join(std::span<const ScoreTable> tables) {
  AlignedTable out;
  for (const auto& t : tables) {
    for (const auto& m : t.metrics) out.columns.push_back(t.name + "." + m);
  }
  out.values.resize(out.columns.size());
  if (tables.empty()) return out;

  for (const auto& [id, _] : tables.front().rows) {
    const bool everywhere = std::all_of(tables.begin() + 1, tables.end(),
                                        [&](const ScoreTable& t) { return t.rows.count(id) > 0; });
    if (!everywhere) continue;
    out.ids.push_back(id);
    std::size_t col = 0;
    for (const auto& t : tables) {
      const auto& values = t.rows.at(id);
      if (values.size() != t.metrics.size()) {
        throw Error(ErrorKind::kSpec, "score row width differs from metric count", {t.name, id});
      }
      for (double v : values) out.values[col++].push_back(v);
    }
  }
  return out;
}

DatasetScoring score_dataset(const CorpusDataset& dataset, const ModelBackend& backend,
                             const EvaluationOptions& options) {
  DatasetScoring result;
  std::vector<TalkRecord> records;
  records.reserve(dataset.size());
  for (const auto& talk : dataset.records()) {
    TalkRecord r = talk;
    if (options.kind == TemplateKind::kClassification) {
      auto outcome = classify_talk(talk, backend, options);
      result.refusals.insert(result.refusals.end(), outcome.refusals.begin(), outcome.refusals.end());
      const double requested = static_cast<double>(options.n_runs);
      if (outcome.unevaluated() ||
          static_cast<double>(outcome.runs.size()) < options.quorum * requested) {
        result.flagged.push_back(talk.id);
      } else {
        auto agg = aggregate_classification(outcome.runs);
        r.sci_mean = agg.sci_mean;
        r.topic = agg.topic;
        r.topic_agreement = agg.agreement_pct;
      }
    } else {
      auto outcome = evaluate_quality(talk, backend, options);
      result.refusals.insert(result.refusals.end(), outcome.refusals.begin(), outcome.refusals.end());
      if (outcome.unevaluated()) {
        result.flagged.push_back(talk.id);
      } else {
        auto agg = aggregate_quality(outcome.runs, static_cast<int>(outcome.refusals.size()),
                                     options.quorum);
        if (agg.below_quorum) {
          result.flagged.push_back(talk.id);
        } else if (options.kind == TemplateKind::kTedQuality && !options.primary) {
          r.extras[backend.descriptor().name + "_clarity"] = agg.clarity_mean;
          r.extras[backend.descriptor().name + "_structure"] = agg.structure_mean;
        } else if (options.kind == TemplateKind::kTedQuality) {
          r.clarity_mean = agg.clarity_mean;
          r.structure_mean = agg.structure_mean;
        } else {
          r.extras[backend.descriptor().name + "_academic_clarity"] = agg.clarity_mean;
          r.extras[backend.descriptor().name + "_academic_structure"] = agg.structure_mean;
        }
      }
    }
    records.push_back(std::move(r));
  }
  result.dataset = dataset.with_records(std::move(records));
  return result;
}

}  // namespace clarity
