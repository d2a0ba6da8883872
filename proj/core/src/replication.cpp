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

#include "clarity/replication.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <fmt/core.h>

#include "clarity/error.hpp"

namespace clarity {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_count(std::optional<double> stored, std::int64_t raw) {
  if (stored) return *stored;
  return raw >= 1 ? std::log10(static_cast<double>(raw)) : kNaN;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Throws Error(kDependency) unless every column has at least `min_present`
// complete rows together.
void require(const DataFrame& frame, std::vector<std::string> names, std::size_t min_present = 3) {
  std::vector<std::string> missing;
  for (const auto& n : names) {
    if (!frame.has(n)) missing.push_back(n);
  }
  if (!missing.empty()) throw Error(ErrorKind::kDependency, "missing columns", std::move(missing));
  const auto keep = frame.complete_rows(names);
  const auto n = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
  if (n < min_present) {
    throw Error(ErrorKind::kDependency,
                fmt::format("only {} complete rows (need {})", n, min_present), std::move(names));
  }
}

template <typename F>
void section(ReplicationResults& out, std::string_view name, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDependency) throw;
    out.skipped.push_back(fmt::format("{}: {}", name, e.what()));
  }
}

std::vector<std::string> core_variables() {
  return {col::kTrend, col::kClarity, col::kStructure, col::kDuration, col::kViews, col::kLikes};
}

CategoryRow category_row(std::string label, const DataFrame& frame, const std::vector<bool>& in_group) {
  const auto& c = frame.numeric(col::kClarity).values;
  const auto& l = frame.numeric(col::kLikes).values;
  const auto& v = frame.numeric(col::kViews).values;
  std::vector<double> cs, ls, vs;
  for (std::size_t i = 0; i < in_group.size(); ++i) {
    if (!in_group[i] || std::isnan(c[i]) || std::isnan(l[i]) || std::isnan(v[i])) continue;
    cs.push_back(c[i]);
    ls.push_back(l[i]);
    vs.push_back(v[i]);
  }
  CategoryRow row;
  row.label = std::move(label);
  row.n = cs.size();
  if (cs.empty()) return row;
  row.clarity_mean = mean(cs);
  row.likes_mean = mean(ls);
  row.views_mean = mean(vs);
  row.clarity_sd = cs.size() >= 2 ? sample_sd(cs) : kNaN;
  row.r_likes = row.r_views = kNaN;
  row.p_likes = row.p_views = kNaN;
  if (cs.size() >= 3) {
    try {
      row.r_likes = pearson(cs, ls);
      row.p_likes = correlation_p_value(row.r_likes, cs.size());
      row.r_views = pearson(cs, vs);
      row.p_views = correlation_p_value(row.r_views, cs.size());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerate) throw;
    }
  }
  return row;
}

}  // namespace

DataFrame build_frame(const CorpusDataset& dataset) {
  const auto& recs = dataset.records();
  const std::size_t n = recs.size();
  std::vector<double> trend(n), clarity(n), structure(n), duration(n), views(n), likes(n),
      science(n), readability(n);
  std::vector<std::optional<std::string>> topic(n);
  std::set<std::string> extra_names;
  for (const auto& r : recs) {
    for (const auto& [k, v] : r.extras) extra_names.insert(k);
  }
  std::map<std::string, std::vector<double>> extras;
  for (const auto& k : extra_names) extras[k].assign(n, kNaN);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = recs[i];
    trend[i] = r.trend_index.value_or(kNaN);
    clarity[i] = r.clarity_mean.value_or(kNaN);
    structure[i] = r.structure_mean.value_or(kNaN);
    duration[i] = static_cast<double>(r.duration_s);
    const bool counts_ok = r.views_log || r.likes_log || (r.views_raw >= 1 && r.likes_raw >= 1);
    views[i] = counts_ok ? log_count(r.views_log, r.views_raw) : kNaN;
    likes[i] = counts_ok ? log_count(r.likes_log, r.likes_raw) : kNaN;
    const auto sci = r.sci_label();
    science[i] = sci ? (*sci ? 1.0 : 0.0) : kNaN;
    readability[i] = r.readability.value_or(kNaN);
    if (r.topic) topic[i] = std::string(name(*r.topic));
    for (const auto& [k, v] : r.extras) extras[k][i] = v;
  }

  DataFrame frame;
  frame.add_numeric(col::kTrend, std::move(trend));
  frame.add_numeric(col::kClarity, std::move(clarity));
  frame.add_numeric(col::kStructure, std::move(structure));
  frame.add_numeric(col::kDuration, std::move(duration));
  frame.add_numeric(col::kViews, std::move(views));
  frame.add_numeric(col::kLikes, std::move(likes));
  frame.add_numeric(col::kScience, std::move(science), ColumnKind::kDummy);
  frame.add_numeric(col::kReadability, std::move(readability));
  frame.add_categorical(col::kTopic, std::move(topic));
  for (auto& [k, v] : extras) {
    if (!frame.has(k)) frame.add_numeric(k, std::move(v));
  }
  return frame;
}

std::vector<std::string> score_extra_columns(const CorpusDataset& dataset) {
  std::set<std::string> names;
  for (const auto& r : dataset.records()) {
    for (const auto& [k, v] : r.extras) {
      const auto l = lower(k);
      if (l.find("clarity") != std::string::npos || l.find("structure") != std::string::npos) {
        names.insert(k);
      }
    }
  }
  return {names.begin(), names.end()};
}

RegressionModelSpec three_step_spec(std::string dependent, std::string reference) {
  RegressionModelSpec spec;
  spec.dependent = std::move(dependent);
  spec.reference = std::move(reference);
  const std::vector<std::string> s1 = {col::kTrend, col::kDuration};
  auto s2 = s1;
  s2.insert(s2.end(), {col::kScience, col::kTopic});
  auto s3 = s2;
  s3.push_back(col::kClarity);
  spec.steps = {s1, s2, s3};
  spec.step_labels = {"I", "II", "III"};
  return spec;
}

RegressionModelSpec interaction_spec(std::string dependent, std::string reference) {
  auto spec = three_step_spec(std::move(dependent), std::move(reference));
  auto s4 = spec.steps.back();
  s4.push_back(std::string(col::kScience) + std::string(kInteractionSeparator) + col::kClarity);
  s4.push_back(std::string(col::kTopic) + std::string(kInteractionSeparator) + col::kClarity);
  spec.steps.push_back(std::move(s4));
  spec.step_labels.emplace_back("IV");
  return spec;
}

CutoffRule CutoffRule::parse(std::string_view text) {
  if (lower(text) == "iqr") return {CutoffMode::kIqr, 0.0};
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::kConfig, "cutoff must be a number or \"iqr\"", {std::string(text)});
  }
  return {CutoffMode::kFixed, v};
}

double CutoffRule::resolve(const CorpusDataset& dataset) const {
  if (mode == CutoffMode::kFixed) return value;
  std::vector<double> c;
  for (const auto& r : dataset.records()) {
    if (!r.clarity_mean) throw Error(ErrorKind::kDependency, "record lacks clarity", {r.id});
    c.push_back(*r.clarity_mean);
  }
  return iqr_lower_fence(c).fence;
}

ReplicationResults replicate(const CorpusDataset& dataset, const ReplicationOptions& options) {
  ReplicationResults out;
  const auto early_all = dataset.filter([](const TalkRecord& r) { return r.phase == Phase::kEarly; });
  const auto late_all = dataset.filter([](const TalkRecord& r) { return r.phase == Phase::kLate; });
  if (early_all.empty()) throw Error(ErrorKind::kContent, "dataset has no early-phase talks");

  auto filtered = apply_clarity_filter(early_all, options.early_cutoff.resolve(early_all));
  out.early_filter = filtered.report;
  out.unfiltered_n = early_all.size();
  const CorpusDataset& early = filtered.kept;
  const DataFrame frame = build_frame(early);
  const auto& ref = options.reference;

  out.engagement = describe(frame, std::vector<std::string>{col::kDuration, col::kViews, col::kLikes});
  out.scores = describe(frame, std::vector<std::string>{col::kClarity, col::kStructure});
  out.stability = summarize_stability(early);
  if (out.stability.empty()) out.skipped.emplace_back("table 4: no topic agreement data");

  section(out, "science x topic", [&] {
    require(frame, {col::kScience, col::kTopic});
    std::map<std::string, CrossTabRow> rows;
    for (const auto c : kAllCategories) rows[std::string(name(c))].topic = std::string(name(c));
    const auto& sci = frame.numeric(col::kScience).values;
    const auto& top = frame.categorical(col::kTopic);
    for (std::size_t i = 0; i < frame.rows(); ++i) {
      if (std::isnan(sci[i]) || !top[i]) continue;
      auto& row = rows[*top[i]];
      (sci[i] > 0.5 ? row.scientific : row.non_scientific) += 1;
    }
    for (auto& [k, v] : rows) out.science_topic.push_back(v);
  });

  const auto vars = core_variables();
  section(out, "table 5", [&] {
    require(frame, vars);
    out.pearson = correlation_matrix(frame, vars, CorrelationMethod::kPearson);
  });
  section(out, "table A7", [&] {
    require(frame, vars);
    out.spearman = correlation_matrix(frame, vars, CorrelationMethod::kSpearman);
  });

  const std::vector<std::string> reg_vars = {col::kTrend, col::kDuration, col::kScience,
                                             col::kTopic, col::kClarity, col::kLikes, col::kViews};
  section(out, "table 6", [&] {
    require(frame, reg_vars, 20);
    out.likes = hierarchical_regression(three_step_spec(col::kLikes, ref), frame);
  });
  section(out, "table 7", [&] {
    require(frame, reg_vars, 20);
    out.views = hierarchical_regression(three_step_spec(col::kViews, ref), frame);
  });
  section(out, "table B9", [&] {
    require(frame, reg_vars, 40);
    out.interactions = hierarchical_regression(interaction_spec(col::kLikes, ref), frame);
  });

  const auto extra_scores = score_extra_columns(dataset);
  section(out, "table 8", [&] {
    if (extra_scores.empty()) {
      throw Error(ErrorKind::kDependency, "no additional model score columns");
    }
    const auto year = early.filter(
        [&](const TalkRecord& r) { return r.publish_date.year() == options.comparison_year; });
    const DataFrame yf = build_frame(year);
    std::vector<std::string> names = {col::kLikes, col::kViews, col::kClarity, col::kStructure};
    for (const auto& e : extra_scores) {
      if (yf.has(e)) names.push_back(e);
    }
    require(yf, names);
    out.model_comparison = correlation_matrix(yf, names, CorrelationMethod::kPearson);
  });

  {
    auto yearly_pool = early.records();
    for (const auto& r : late_all.records()) yearly_pool.push_back(r);
    out.yearly = summarize_years(early.with_records(std::move(yearly_pool)));
  }

  section(out, "table 10", [&] {
    if (late_all.empty()) throw Error(ErrorKind::kDependency, "no late-phase talks");
    auto late = apply_clarity_filter(late_all, options.late_cutoff.resolve(late_all));
    out.late_filter = late.report;
    const DataFrame lf = build_frame(late.kept);
    std::vector<std::string> names = {col::kLikes, col::kViews, col::kClarity, col::kStructure};
    for (const auto& e : extra_scores) {
      if (lf.has(e)) names.push_back(e);
    }
    require(lf, names);
    out.late_phase = correlation_matrix(lf, names, CorrelationMethod::kPearson);
  });

  section(out, "table 11", [&] {
    const std::vector<std::string> names = {col::kClarity, col::kReadability, col::kViews,
                                            col::kLikes};
    require(frame, names);
    out.readability = correlation_matrix(frame, names, CorrelationMethod::kPearson);
  });

  section(out, "table A8", [&] {
    require(frame, {col::kClarity, col::kLikes, col::kViews, col::kTopic});
    const auto& top = frame.categorical(col::kTopic);
    for (const auto c : kAllCategories) {
      std::vector<bool> g(frame.rows());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = top[i] && *top[i] == name(c);
      auto row = category_row(std::string(name(c)), frame, g);
      if (row.n > 0) out.categories.push_back(std::move(row));
    }
    if (frame.has(col::kScience)) {
      const auto& sci = frame.numeric(col::kScience).values;
      for (const bool flag : {false, true}) {
        std::vector<bool> g(frame.rows());
        for (std::size_t i = 0; i < g.size(); ++i) {
          g[i] = !std::isnan(sci[i]) && (sci[i] > 0.5) == flag;
        }
        auto row = category_row(flag ? "Scientific" : "Non-Scientific", frame, g);
        if (row.n > 0) out.categories.push_back(std::move(row));
      }
    }
  });

  const DataFrame full = build_frame(early_all);
  section(out, "table F1", [&] {
    require(full, vars);
    out.unfiltered_pearson = correlation_matrix(full, vars, CorrelationMethod::kPearson);
  });
  section(out, "table F2", [&] {
    require(full, reg_vars, 20);
    out.unfiltered_likes = hierarchical_regression(three_step_spec(col::kLikes, ref), full);
  });

  std::vector<double> clarity;
  for (const auto& r : early.records()) clarity.push_back(*r.clarity_mean);
  out.clarity_histogram = histogram(clarity, options.histogram_bins);
  {
    auto pool = early.records();
    for (const auto& r : late_all.records()) {
      if (r.clarity_mean) pool.push_back(r);
    }
    out.clarity_by_year = yearly_density_table(early.with_records(std::move(pool)),
                                               options.histogram_bins, "clarity_by_year",
                                               "Binned clarity densities by year");
  }
  return out;
}

RenderedTable category_table(std::span<const CategoryRow> rows, std::string id, std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Category", "N", "Clarity (M)", "Clarity (SD)", "Likes (M)", "Views (M)",
               "Clarity-Likes r", "Clarity-Views r"};
  for (const auto& r : rows) {
    t.rows.push_back({r.label, std::to_string(r.n), format_fixed(r.clarity_mean, 2),
                      format_fixed(r.clarity_sd, 2), format_fixed(r.likes_mean, 2),
                      format_fixed(r.views_mean, 2),
                      format_correlation(r.r_likes) + correlation_stars(r.p_likes),
                      format_correlation(r.r_views) + correlation_stars(r.p_views)});
  }
  t.legend = "Note. *p<.05; **p<.01.";
  return t;
}

RenderedTable science_topic_table(std::span<const CrossTabRow> rows, std::string id,
                                  std::string title) {
  std::size_t tn = 0, ts = 0;
  for (const auto& r : rows) {
    tn += r.non_scientific;
    ts += r.scientific;
  }
  const auto pct = [](std::size_t k, std::size_t total) {
    return total == 0 ? std::string("n/a")
                      : format_fixed(100.0 * static_cast<double>(k) / static_cast<double>(total), 1);
  };
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Topic", "Non-scientific N", "Non-scientific %", "Scientific N", "Scientific %",
               "Total N", "Total %"};
  for (const auto& r : rows) {
    const std::size_t total = r.non_scientific + r.scientific;
    t.rows.push_back({r.topic, std::to_string(r.non_scientific), pct(r.non_scientific, tn),
                      std::to_string(r.scientific), pct(r.scientific, ts), std::to_string(total),
                      pct(total, tn + ts)});
  }
  t.rows.push_back({"Total", std::to_string(tn), pct(tn, tn), std::to_string(ts), pct(ts, ts),
                    std::to_string(tn + ts), pct(tn + ts, tn + ts)});
  return t;
}

std::vector<OutputFile> render_replication(const ReplicationResults& res, TableFormat format) {
  std::vector<OutputFile> files;
  const auto emit = [&](const RenderedTable& t, std::string_view dep = {}) {
    files.push_back({table_file_name(t.id, dep, format), render(t, format)});
  };
  const auto emit_json = [&](std::string name, std::string content) {
    files.push_back({std::move(name), std::move(content)});
  };
  const std::string n_early = std::to_string(res.early_filter.n_after);

  emit(descriptives_table(res.engagement, "2",
                          "Descriptive statistics of engagement variables (N = " + n_early + ")"));
  emit(descriptives_table(res.scores, "3",
                          "Descriptive statistics of clarity and structure scores (N = " +
                              n_early + ")"));
  if (!res.stability.empty()) {
    emit(stability_table(res.stability, "4", "Stability of topic classification across runs"));
  }
  if (!res.science_topic.empty()) {
    emit(science_topic_table(res.science_topic, "science_topic",
                             "Scientific and non-scientific talks by topic"));
  }
  if (res.pearson) {
    emit(correlation_table(*res.pearson, "5", "Pearson correlations among key variables"));
    emit_json("analysis_5.json", analysis_json(*res.pearson));
  }
  if (res.spearman) {
    emit(correlation_table(*res.spearman, "A7", "Spearman rank-order correlations"));
    emit_json("analysis_A7.json", analysis_json(*res.spearman));
  }
  if (res.likes) {
    emit(regression_table(*res.likes, "6", "Hierarchical regression predicting Likes"), "likes");
    emit_json("analysis_6_likes.json", analysis_json(*res.likes));
  }
  if (res.views) {
    emit(regression_table(*res.views, "7", "Hierarchical regression predicting Views"), "views");
    emit_json("analysis_7_views.json", analysis_json(*res.views));
  }
  if (res.model_comparison) {
    emit(correlation_table(*res.model_comparison, "8",
                           "Correlations across prompt types and models"));
    emit_json("analysis_8.json", analysis_json(*res.model_comparison));
  }
  emit(yearly_table(res.yearly, "9", "Clarity and structure scores by year"));
  if (res.late_phase) {
    emit(correlation_table(*res.late_phase, "10", "Late-phase correlation matrix"));
    emit_json("analysis_10.json", analysis_json(*res.late_phase));
  }
  if (res.readability) {
    emit(correlation_table(*res.readability, "11",
                           "Correlations between clarity, readability and engagement"));
    emit_json("analysis_11.json", analysis_json(*res.readability));
  }
  if (!res.categories.empty()) {
    emit(category_table(res.categories, "A8",
                        "Clarity and engagement by content category and scientificity"));
  }
  if (res.interactions) {
    emit(regression_table(*res.interactions, "B9",
                          "Hierarchical regression predicting Likes with interaction terms"),
         "likes");
    emit_json("analysis_B9_likes.json", analysis_json(*res.interactions));
  }
  if (res.unfiltered_pearson) {
    emit(correlation_table(*res.unfiltered_pearson, "F1",
                           "Pearson correlations, unfiltered early phase (N = " +
                               std::to_string(res.unfiltered_n) + ")"));
    emit_json("analysis_F1.json", analysis_json(*res.unfiltered_pearson));
  }
  if (res.unfiltered_likes) {
    emit(regression_table(*res.unfiltered_likes, "F2",
                          "Hierarchical regression predicting Likes, unfiltered early phase"),
         "likes");
    emit_json("analysis_F2_likes.json", analysis_json(*res.unfiltered_likes));
  }

  emit_json("filter_report_early.json", res.early_filter.to_json());
  if (res.late_filter) emit_json("filter_report_late.json", res.late_filter->to_json());
  files.push_back({"distribution_clarity.csv",
                   render(histogram_table(res.clarity_histogram, "clarity_histogram",
                                          "Clarity histogram"),
                          TableFormat::kCsv)});
  files.push_back({"distribution_clarity_by_year.csv", render(res.clarity_by_year, TableFormat::kCsv)});

  std::string manifest;
  for (const auto& f : files) manifest += "file " + f.name + "\n";
  for (const auto& s : res.skipped) manifest += "skipped " + s + "\n";
  files.push_back({"manifest.txt", std::move(manifest)});
  return files;
}

}  // namespace clarity
