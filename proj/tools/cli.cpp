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

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>
#include "CLI11.hpp"

#include "clarity/backend.hpp"
#include "clarity/error.hpp"
#include "clarity/evaluator.hpp"
#include "clarity/preprocess.hpp"
#include "clarity/replication.hpp"
#include "clarity/report.hpp"
#include "clarity/run_cache.hpp"
#include "clarity/trends.hpp"
#include "config.hpp"

namespace clarity::cli {

namespace fs = std::filesystem;

namespace {

struct Args {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string data;
  std::string out;
  std::string backend;
  int runs = 0;
  std::string cutoff;
  std::string phase;
  std::string format;
  std::string dep;
  std::string spec;
  std::string trends;
  std::string cache;
  std::string mapping;
  std::string template_kind = "ted";
  bool normalized = false;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read file", {path.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write file", {path.string()});
  out << content;
  if (!out) throw Error(ErrorKind::kIo, "write failed", {path.string()});
}

LoadOptions load_options(const Args& a, const PipelineConfig& c) {
  LoadOptions o;
  o.windows = c.windows;
  if (!a.mapping.empty()) {
    o.mapping = ColumnMapping::from_file(a.mapping);
  } else if (c.mapping) {
    o.mapping = ColumnMapping::from_file(*c.mapping);
  }
  return o;
}

fs::path data_path(const Args& a, const PipelineConfig& c) {
  if (!a.data.empty()) return a.data;
  if (!c.corpus.empty()) return c.corpus;
  throw Error(ErrorKind::kConfig, "no input given (use --data or the config corpus)");
}

CorpusDataset load(const Args& a, const PipelineConfig& c) {
  const fs::path p = data_path(a, c);
  return load_corpus(p, format_from_path(p), load_options(a, c));
}

fs::path out_dir(const Args& a, const PipelineConfig& c) {
  return a.out.empty() ? c.output_dir : fs::path(a.out);
}

fs::path out_file(const Args& a, const PipelineConfig& c, std::string_view fallback) {
  return a.out.empty() ? c.output_dir / fallback : fs::path(a.out);
}

CorpusFormat out_corpus_format(const Args& a, const fs::path& path) {
  if (!a.format.empty()) return parse_corpus_format(a.format);
  return format_from_path(path);
}

TableFormat table_format(const Args& a) {
  return a.format.empty() ? TableFormat::kMarkdown : parse_table_format(a.format);
}

std::optional<Phase> phase_arg(const Args& a) {
  if (a.phase.empty() || a.phase == "all") return std::nullopt;
  return parse_phase(a.phase);
}

std::string phase_counts(const CorpusDataset& d) {
  std::size_t early = 0;
  for (const auto& r : d.records()) early += r.phase == Phase::kEarly ? 1 : 0;
  return fmt::format("{} talks (early {}, late {})", d.size(), early, d.size() - early);
}

int cmd_ingest(const Args& a, const PipelineConfig& c, std::ostream& out) {
  const auto dataset = load(a, c);
  const fs::path dest = out_file(a, c, "corpus.jsonl");
  write_corpus(dataset, dest, out_corpus_format(a, dest));
  out << "ingested " << phase_counts(dataset) << " -> " << dest.string() << "\n";
  return kExitOk;
}

int cmd_trend(const Args& a, const PipelineConfig& c, std::ostream& out) {
  if (a.trends.empty()) throw Error(ErrorKind::kConfig, "trend needs --trends <file>");
  const auto dataset = load(a, c);
  const auto series = load_trend_csv(a.trends, a.normalized);
  const Phase phase = phase_arg(a).value_or(Phase::kEarly);
  const auto subset = dataset.filter([&](const TalkRecord& r) { return r.phase == phase; });
  const auto tagged = attach_trend_index(subset, series);
  std::map<std::string, const TalkRecord*> by_id;
  for (const auto& r : tagged.records()) by_id[r.id] = &r;
  std::vector<TalkRecord> merged;
  for (const auto& r : dataset.records()) {
    const auto it = by_id.find(r.id);
    merged.push_back(it == by_id.end() ? r : *it->second);
  }
  const fs::path dest = out_file(a, c, "corpus_trend.jsonl");
  write_corpus(dataset.with_records(std::move(merged)), dest, out_corpus_format(a, dest));
  out << "attached trend index to " << tagged.size() << " talks -> " << dest.string() << "\n";
  return kExitOk;
}

int score(const Args& a, const PipelineConfig& c, std::ostream& out, TemplateKind kind) {
  const auto dataset = load(a, c);
  const std::string backend_name = a.backend.empty() ? c.backends.front().name : a.backend;
  const auto& desc = c.backend(backend_name);
  const auto backend = make_backend(desc, a.seed_set ? a.seed : c.seed);

  std::optional<fs::path> cache_path = c.cache;
  if (!a.cache.empty()) cache_path = fs::path(a.cache);
  RunCache cache(cache_path);

  EvaluationOptions opt;
  opt.kind = kind;
  opt.n_runs = a.runs > 0 ? a.runs
                          : (kind == TemplateKind::kClassification ? c.n_runs_classification
                                                                   : c.n_runs_quality);
  opt.concurrency = c.concurrency;
  opt.cache = &cache;
  opt.primary = c.is_primary(backend_name);

  const auto phase = phase_arg(a);
  const auto subset = phase ? dataset.filter([&](const TalkRecord& r) { return r.phase == *phase; })
                            : dataset;
  auto scored = score_dataset(subset, *backend, opt);

  const fs::path dest = out_file(a, c, "corpus_scored.jsonl");
  write_corpus(scored.dataset, dest, out_corpus_format(a, dest));
  if (!scored.refusals.empty()) {
    std::string log;
    for (const auto& r : scored.refusals) {
      log += fmt::format("{}\t{}\t{}\t{}\n", r.talk_id, r.backend, r.run_index, r.excerpt);
    }
    write_text(fs::path(dest.string() + ".refusals.tsv"), log);
  }
  out << fmt::format("{} {} with {} ({} runs): {} flagged, {} refusals -> {}\n",
                     kind == TemplateKind::kClassification ? "classified" : "evaluated",
                     phase_counts(scored.dataset), backend_name, opt.n_runs, scored.flagged.size(),
                     scored.refusals.size(), dest.string());
  return kExitOk;
}

int cmd_filter(const Args& a, const PipelineConfig& c, std::ostream& out) {
  const auto dataset = load(a, c);
  const Phase phase = phase_arg(a).value_or(Phase::kEarly);
  const auto subset = dataset.filter([&](const TalkRecord& r) { return r.phase == phase; });
  CutoffRule rule = phase == Phase::kEarly ? c.cutoff : c.late_cutoff;
  if (!a.cutoff.empty()) rule = CutoffRule::parse(a.cutoff);
  const auto result = apply_clarity_filter(subset, rule.resolve(subset));
  const fs::path dir = out_dir(a, c);
  const fs::path in = data_path(a, c);
  const auto fmt_in = format_from_path(in);
  const std::string ext = fmt_in == CorpusFormat::kCsv ? "csv" : "jsonl";
  const std::string tag(to_string(phase));
  write_corpus(result.kept, dir / ("filtered_" + tag + "." + ext), fmt_in);
  write_text(dir / ("filter_report_" + tag + ".json"), result.report.to_json() + "\n");
  write_text(dir / ("readability_" + tag + ".csv"), readability_audit_csv(result.kept));
  out << fmt::format("{} phase: cutoff {:.4f}, kept {} of {}, excluded {} (IQR fence {:.4f})\n", tag,
                     result.report.cutoff, result.report.n_after, result.report.n_before,
                     result.report.n_excluded, result.report.fence);
  return kExitOk;
}

std::string resolve_column(const DataFrame& frame, const std::string& name) {
  if (frame.has(name)) return name;
  const auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return s;
  };
  for (const char* known : {col::kTrend, col::kClarity, col::kStructure, col::kDuration, col::kViews,
                            col::kLikes, col::kScience, col::kTopic, col::kReadability}) {
    if (lower(known) == lower(name)) return known;
  }
  throw Error(ErrorKind::kSpec, "unknown column", {name});
}

int cmd_analyze(const Args& a, const PipelineConfig& c, std::ostream& out) {
  const auto all = load(a, c);
  const auto phase = phase_arg(a).value_or(Phase::kEarly);
  const auto dataset = all.filter([&](const TalkRecord& r) { return r.phase == phase; });
  const DataFrame frame = build_frame(dataset);

  std::vector<RegressionModelSpec> specs;
  if (!a.spec.empty()) {
    specs.push_back(RegressionModelSpec::from_json(read_text(a.spec)));
  } else {
    for (const auto& p : c.regression_specs) specs.push_back(RegressionModelSpec::from_json(read_text(p)));
  }
  if (specs.empty()) {
    if (a.dep.empty()) throw Error(ErrorKind::kConfig, "analyze needs --dep or --spec");
    specs.push_back(three_step_spec(resolve_column(frame, a.dep)));
  }
  const TableFormat format = table_format(a);
  const fs::path dir = out_dir(a, c);
  for (auto& spec : specs) {
    if (!a.dep.empty()) spec.dependent = resolve_column(frame, a.dep);
    spec.dependent = resolve_column(frame, spec.dependent);
    const auto result = hierarchical_regression(spec, frame);
    const auto table = regression_table(result, "regression",
                                        "Hierarchical regression predicting " + result.dependent);
    const std::string file = table_file_name("regression", result.dependent, format);
    write_text(dir / file, render(table, format));
    const std::string json_name =
        "analysis" + table_file_name("regression", result.dependent, TableFormat::kJson).substr(5);
    write_text(dir / json_name, analysis_json(result));
    out << fmt::format("{}: n = {} ({} dropped), final R2 = {:.3f} -> {}\n", result.dependent,
                       result.n, result.n_dropped, result.steps.back().r2, (dir / file).string());
  }
  return kExitOk;
}

int cmd_report(const Args& a, const PipelineConfig& c, std::ostream& out) {
  if (a.data.empty()) throw Error(ErrorKind::kConfig, "report needs --data <analysis.json>");
  const fs::path in = a.data;
  std::string stem = in.stem().string();
  if (stem.starts_with("analysis_")) stem = stem.substr(9);
  const TableFormat format = table_format(a);
  const auto table = table_from_analysis_json(read_text(in), stem, stem);
  const fs::path dest = out_dir(a, c) / ("table_" + stem + "." + std::string(extension(format)));
  write_text(dest, render(table, format));
  out << "rendered " << in.string() << " -> " << dest.string() << "\n";
  return kExitOk;
}

int cmd_replicate(const Args& a, const PipelineConfig& c, std::ostream& out) {
  const auto dataset = load(a, c);
  ReplicationOptions opt;
  opt.early_cutoff = a.cutoff.empty() ? c.cutoff : CutoffRule::parse(a.cutoff);
  opt.late_cutoff = c.late_cutoff;
  const auto results = replicate(dataset, opt);
  const auto files = render_replication(results, table_format(a));
  const fs::path dir = out_dir(a, c);
  for (const auto& f : files) write_text(dir / f.name, f.content);
  out << fmt::format("replicated {}: kept {} of {} early talks; wrote {} files to {}\n",
                     phase_counts(dataset), results.early_filter.n_after,
                     results.early_filter.n_before, files.size(), dir.string());
  for (const auto& s : results.skipped) out << "  skipped " << s << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transcript clarity scoring and engagement analysis pipeline", "clarity_lab"};
  app.require_subcommand(1, 1);
  Args a;
  app.add_option("--config", a.config, "Pipeline config (JSON); defaults to $CLARITY_LAB_CONFIG");
  app.add_option("--seed", a.seed, "Seed for the mock backend")->each([&](const std::string&) {
    a.seed_set = true;
  });

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--data", a.data, "Input file");
    sub->add_option("--out", a.out, "Output file or directory");
    sub->add_option("--mapping", a.mapping, "Column mapping (JSON) for the input corpus");
    sub->add_option("--phase", a.phase, "early, late or all");
    sub->add_option("--format", a.format, "Output format");
    sub->fallthrough();
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write it in canonical form");
  add_common(ingest);
  auto* trend = app.add_subcommand("trend", "Attach the monthly trend index");
  add_common(trend);
  trend->add_option("--trends", a.trends, "Trends export (month,value CSV)")->required();
  trend->add_flag("--normalized", a.normalized, "Values are already on the 0-100 scale");
  auto* evaluate = app.add_subcommand("evaluate", "Score transcripts for clarity and structure");
  add_common(evaluate);
  auto* classify = app.add_subcommand("classify", "Classify topic and scientific flag");
  add_common(classify);
  for (auto* sub : {evaluate, classify}) {
    sub->add_option("--backend", a.backend, "Backend name from the config (default: primary)");
    sub->add_option("--runs", a.runs, "Runs per talk")->check(CLI::PositiveNumber);
    sub->add_option("--cache", a.cache, "Run cache (JSONL)");
  }
  evaluate->add_option("--template", a.template_kind, "ted or academic")
      ->check(CLI::IsMember({"ted", "academic"}));
  auto* filter = app.add_subcommand("filter", "Apply the clarity cutoff");
  add_common(filter);
  filter->add_option("--cutoff", a.cutoff, "Cutoff value or \"iqr\"");
  auto* analyze = app.add_subcommand("analyze", "Run a hierarchical regression");
  add_common(analyze);
  analyze->add_option("--dep", a.dep, "Dependent variable");
  analyze->add_option("--spec", a.spec, "Regression spec (JSON)");
  auto* report = app.add_subcommand("report", "Render a stored analysis result");
  add_common(report);
  auto* replicate_cmd = app.add_subcommand("replicate", "Reproduce all tables from a scored dataset");
  add_common(replicate_cmd);
  replicate_cmd->add_option("--cutoff", a.cutoff, "Early-phase cutoff value or \"iqr\"");

  std::vector<const char*> argv = {"clarity_lab"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const auto config =
        load_config(a.config.empty() ? std::nullopt : std::optional<fs::path>(a.config));
    if (*ingest) return cmd_ingest(a, config, out);
    if (*trend) return cmd_trend(a, config, out);
    if (*evaluate) {
      return score(a, config, out, a.template_kind == "academic" ? TemplateKind::kAcademicQuality
                                                                 : TemplateKind::kTedQuality);
    }
    if (*classify) return score(a, config, out, TemplateKind::kClassification);
    if (*filter) return cmd_filter(a, config, out);
    if (*analyze) return cmd_analyze(a, config, out);
    if (*report) return cmd_report(a, config, out);
    if (*replicate_cmd) return cmd_replicate(a, config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace clarity::cli
