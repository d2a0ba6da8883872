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

#include "clarity/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/core.h>
#include "json.hpp"

#include "clarity/csv.hpp"
#include "clarity/error.hpp"

namespace clarity {

using json = nlohmann::json;

TableFormat parse_table_format(std::string_view text) {
  if (text == "md" || text == "markdown") return TableFormat::kMarkdown;
  if (text == "csv") return TableFormat::kCsv;
  if (text == "json") return TableFormat::kJson;
  throw Error(ErrorKind::kConfig, "unknown table format", {std::string(text)});
}

std::string_view extension(TableFormat format) {
  switch (format) {
    case TableFormat::kMarkdown: return "md";
    case TableFormat::kCsv: return "csv";
    case TableFormat::kJson: return "json";
  }
  return "txt";
}

void RenderedTable::validate() const {
  if (headers.empty()) throw Error(ErrorKind::kRender, "table has no columns", {id});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != headers.size()) {
      throw Error(ErrorKind::kRender,
                  fmt::format("row {} has {} cells, expected {}", i + 1, rows[i].size(),
                              headers.size()),
                  {id});
    }
  }
}

namespace {

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

std::string render_markdown(const RenderedTable& t) {
  std::string out = fmt::format("### Table {}. {}\n\n|", t.id, t.title);
  for (const auto& h : t.headers) out += " " + md_cell(h) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.headers.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& row : t.rows) {
    out += "|";
    for (const auto& c : row) out += " " + md_cell(c) + " |";
    out += "\n";
  }
  if (!t.legend.empty()) out += "\n" + t.legend + "\n";
  return out;
}

std::string render_csv(const RenderedTable& t) {
  std::ostringstream os;
  csv::write_row(os, t.headers);
  for (const auto& row : t.rows) csv::write_row(os, row);
  return os.str();
}

std::string render_json(const RenderedTable& t) {
  json j;
  j["id"] = t.id;
  j["title"] = t.title;
  j["headers"] = t.headers;
  j["rows"] = t.rows;
  j["legend"] = t.legend;
  return j.dump(2) + "\n";
}

}  // namespace

std::string render(const RenderedTable& table, TableFormat format) {
  table.validate();
  switch (format) {
    case TableFormat::kMarkdown: return render_markdown(table);
    case TableFormat::kCsv: return render_csv(table);
    case TableFormat::kJson: return render_json(table);
  }
  throw Error(ErrorKind::kRender, "unsupported format");
}

RenderedTable table_from_csv(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.empty()) throw Error(ErrorKind::kParse, "empty table csv");
  RenderedTable t;
  t.headers = rows.front().fields;
  for (std::size_t i = 1; i < rows.size(); ++i) t.rows.push_back(rows[i].fields);
  t.validate();
  return t;
}

RenderedTable table_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RenderedTable t;
    t.id = j.at("id").get<std::string>();
    t.title = j.at("title").get<std::string>();
    t.headers = j.at("headers").get<std::vector<std::string>>();
    t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    t.legend = j.value("legend", std::string());
    t.validate();
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, "malformed table json", {e.what()});
  }
}

std::string table_file_name(std::string_view id, std::string_view dependent, TableFormat format) {
  std::string dep(dependent);
  std::transform(dep.begin(), dep.end(), dep.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (dep.empty()) return fmt::format("table_{}.{}", id, extension(format));
  return fmt::format("table_{}_{}.{}", id, dep, extension(format));
}

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return "n/a";
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_correlation(double r) {
  std::string s = format_fixed(r, 3);
  if (s.starts_with("0.")) return s.substr(1);
  if (s.starts_with("-0.")) return "-" + s.substr(2);
  return s;
}

std::string regression_stars(double p) {
  if (!(p < .05)) return "";
  if (p < .001) return "***";
  if (p < .01) return "**";
  return "*";
}

std::string correlation_stars(double p) {
  if (p < .01) return "**";
  if (p < .05) return "*";
  return "";
}

namespace {

std::vector<double> present(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) {
    if (!std::isnan(x)) out.push_back(x);
  }
  return out;
}

double sd_or_nan(std::span<const double> v) {
  return v.size() < 2 ? std::nan("") : sample_sd(v);
}

std::string format_count(std::size_t n) {
  std::string s = std::to_string(n);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return s;
}

}  // namespace

std::vector<Descriptive> describe(const DataFrame& frame, std::span<const std::string> names) {
  std::vector<Descriptive> out;
  for (const auto& name : names) {
    if (!frame.has_numeric(name)) throw Error(ErrorKind::kSpec, "unknown numeric column", {name});
    const auto v = present(frame.numeric(name).values);
    if (v.empty()) throw Error(ErrorKind::kContent, "no values to describe", {name});
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out.push_back({name, v.size(), *lo, *hi, mean(v), sd_or_nan(v)});
  }
  return out;
}

RenderedTable descriptives_table(std::span<const Descriptive> rows, std::string id,
                                 std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Variable", "N", "Minimum", "Maximum", "Mean", "Std. Deviation"};
  for (const auto& d : rows) {
    t.rows.push_back({d.name, format_count(d.n), format_fixed(d.min, 2), format_fixed(d.max, 2),
                      format_fixed(d.mean, 2), format_fixed(d.sd, 2)});
  }
  return t;
}

std::vector<YearStats> summarize_years(const CorpusDataset& dataset) {
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_year;
  for (const auto& r : dataset.records()) {
    if (!r.clarity_mean || !r.structure_mean) continue;
    auto& [c, s] = by_year[r.publish_date.year()];
    c.push_back(*r.clarity_mean);
    s.push_back(*r.structure_mean);
  }
  std::vector<YearStats> out;
  for (const auto& [year, cs] : by_year) {
    const auto& [c, s] = cs;
    if (c.size() < 2) continue;
    out.push_back({year, c.size(), mean(c), sample_sd(c), mean(s), sample_sd(s)});
  }
  return out;
}

RenderedTable yearly_table(std::span<const YearStats> rows, std::string id, std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Year", "Mean Clarity", "SD Clarity", "Mean Structure", "SD Structure", "N"};
  for (const auto& y : rows) {
    t.rows.push_back({std::to_string(y.year), format_fixed(y.clarity_mean, 2),
                      format_fixed(y.clarity_sd, 2), format_fixed(y.structure_mean, 2),
                      format_fixed(y.structure_sd, 2), std::to_string(y.n)});
  }
  return t;
}

std::vector<StabilityRow> summarize_stability(const CorpusDataset& dataset) {
  std::map<Category, std::vector<double>> by_cat;
  std::vector<double> all;
  for (const auto& r : dataset.records()) {
    if (!r.topic || !r.topic_agreement) continue;
    by_cat[*r.topic].push_back(*r.topic_agreement);
    all.push_back(*r.topic_agreement);
  }
  std::vector<StabilityRow> out;
  for (const auto& [cat, v] : by_cat) {
    out.push_back({std::string(name(cat)), mean(v), v.size(), sd_or_nan(v)});
  }
  if (!all.empty()) out.push_back({"Total", mean(all), all.size(), sd_or_nan(all)});
  return out;
}

RenderedTable stability_table(std::span<const StabilityRow> rows, std::string id,
                              std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Topic Category", "Mean Agreement (%)", "N", "SD"};
  for (const auto& r : rows) {
    t.rows.push_back(
        {r.category, format_fixed(r.mean_agreement, 2), format_count(r.n), format_fixed(r.sd, 2)});
  }
  return t;
}

RenderedTable correlation_table(const CorrelationMatrix& matrix, std::string id,
                                std::string title, std::span<const std::string> labels) {
  const auto& names = labels.empty() ? matrix.names
                                     : std::vector<std::string>(labels.begin(), labels.end());
  if (names.size() != matrix.names.size()) {
    throw Error(ErrorKind::kRender, "label count differs from matrix size");
  }
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Variable"};
  t.headers.insert(t.headers.end(), names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> row = {names[i]};
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (j < i) {
        row.emplace_back();
      } else if (j == i) {
        row.emplace_back("1");
      } else {
        row.push_back(format_correlation(matrix.r[i][j]) + correlation_stars(matrix.p[i][j]));
      }
    }
    t.rows.push_back(std::move(row));
  }
  t.legend = fmt::format("Note. N = {}. *p < .05, **p < .01 (two-tailed); {}.",
                         format_count(matrix.n),
                         matrix.method == CorrelationMethod::kPearson ? "Pearson r"
                                                                      : "Spearman rho");
  return t;
}

RenderedTable regression_table(const HierarchicalResult& result, std::string id,
                               std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"Step", "Predictor", "B", "\xCE\xB2", "t", "p", "F", "R\xC2\xB2",
               "\xCE\x94R\xC2\xB2"};
  for (std::size_t s = 0; s < result.steps.size(); ++s) {
    const auto& step = result.steps[s];
    for (std::size_t i = 0; i < step.predictors.size(); ++i) {
      const auto& p = step.predictors[i];
      std::string label = p.name;
      const bool dummy_of_term = p.term != p.name && p.name.find(kInteractionSeparator) == std::string::npos;
      if (dummy_of_term && !result.reference.empty()) {
        label += " (vs. " + result.reference + ")";
      }
      std::vector<std::string> row = {
          i == 0 ? "Step " + step.label : "",
          label,
          format_fixed(p.b, 4),
          format_fixed(p.beta, 3),
          format_fixed(p.t, 2) + regression_stars(p.p),
          p.p < .001 ? "<.001" : format_fixed(p.p, 3),
          "", "", ""};
      if (i == 0) {
        row[6] = format_fixed(step.f, 2) + regression_stars(step.f_p);
        row[7] = format_fixed(step.r2, 3);
        row[8] = s == 0 ? "" : format_fixed(step.delta_r2, 3);
      }
      t.rows.push_back(std::move(row));
    }
  }
  t.legend = fmt::format("Note. Dependent variable: {}; N = {}. *p<.05; **p<.01; ***p<.001.",
                         result.dependent, format_count(result.n));
  return t;
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

json matrix_json(const std::vector<std::vector<double>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (double v : row) r.push_back(number(v));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<double>> read_matrix(const json& j) {
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(read_number(v));
    out.push_back(std::move(r));
  }
  return out;
}

json parse_kind(std::string_view text, std::string_view kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "analysis result is not valid JSON", {e.what()});
  }
  if (!j.is_object() || j.value("kind", std::string()) != kind) {
    throw Error(ErrorKind::kRender, "analysis JSON has an unexpected kind",
                {j.is_object() ? j.value("kind", std::string("<none>")) : "<not an object>"});
  }
  return j;
}

}  // namespace

std::string analysis_json(const CorrelationMatrix& m) {
  json j;
  j["kind"] = "correlation";
  j["method"] = m.method == CorrelationMethod::kPearson ? "pearson" : "spearman";
  j["n"] = m.n;
  j["names"] = m.names;
  j["r"] = matrix_json(m.r);
  j["p"] = matrix_json(m.p);
  return j.dump(2) + "\n";
}

std::string analysis_json(const HierarchicalResult& result) {
  json j;
  j["kind"] = "hierarchical";
  j["dependent"] = result.dependent;
  j["reference"] = result.reference;
  j["n"] = result.n;
  j["n_dropped"] = result.n_dropped;
  j["steps"] = json::array();
  for (const auto& s : result.steps) {
    json js;
    js["label"] = s.label;
    js["intercept"] = number(s.intercept);
    js["r2"] = number(s.r2);
    js["adj_r2"] = number(s.adj_r2);
    js["delta_r2"] = number(s.delta_r2);
    js["f"] = number(s.f);
    js["f_p"] = number(s.f_p);
    js["f_change"] = number(s.f_change);
    js["f_change_p"] = number(s.f_change_p);
    js["df_model"] = s.df_model;
    js["df_resid"] = s.df_resid;
    js["df_change"] = s.df_change;
    js["n"] = s.n;
    js["predictors"] = json::array();
    for (const auto& p : s.predictors) {
      js["predictors"].push_back({{"name", p.name},
                                  {"term", p.term},
                                  {"b", number(p.b)},
                                  {"beta", number(p.beta)},
                                  {"se", number(p.se)},
                                  {"t", number(p.t)},
                                  {"p", number(p.p)}});
    }
    j["steps"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

CorrelationMatrix correlation_from_json(std::string_view text) {
  const json j = parse_kind(text, "correlation");
  try {
    CorrelationMatrix m;
    m.method = j.at("method").get<std::string>() == "spearman" ? CorrelationMethod::kSpearman
                                                                : CorrelationMethod::kPearson;
    m.n = j.at("n").get<std::size_t>();
    m.names = j.at("names").get<std::vector<std::string>>();
    m.r = read_matrix(j.at("r"));
    m.p = read_matrix(j.at("p"));
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, "malformed correlation JSON", {e.what()});
  }
}

HierarchicalResult hierarchical_from_json(std::string_view text) {
  const json j = parse_kind(text, "hierarchical");
  try {
    HierarchicalResult r;
    r.dependent = j.at("dependent").get<std::string>();
    r.reference = j.value("reference", std::string());
    r.n = j.at("n").get<std::size_t>();
    r.n_dropped = j.value("n_dropped", std::size_t{0});
    for (const auto& js : j.at("steps")) {
      RegressionStepResult s;
      s.label = js.at("label").get<std::string>();
      s.intercept = read_number(js.at("intercept"));
      s.r2 = read_number(js.at("r2"));
      s.adj_r2 = read_number(js.at("adj_r2"));
      s.delta_r2 = read_number(js.at("delta_r2"));
      s.f = read_number(js.at("f"));
      s.f_p = read_number(js.at("f_p"));
      s.f_change = read_number(js.at("f_change"));
      s.f_change_p = read_number(js.at("f_change_p"));
      s.df_model = js.at("df_model").get<int>();
      s.df_resid = js.at("df_resid").get<int>();
      s.df_change = js.at("df_change").get<int>();
      s.n = js.at("n").get<std::size_t>();
      for (const auto& jp : js.at("predictors")) {
        s.predictors.push_back({jp.at("name").get<std::string>(),
                                jp.value("term", jp.at("name").get<std::string>()),
                                read_number(jp.at("b")), read_number(jp.at("beta")),
                                read_number(jp.at("se")), read_number(jp.at("t")),
                                read_number(jp.at("p"))});
      }
      r.steps.push_back(std::move(s));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, "malformed regression JSON", {e.what()});
  }
}

RenderedTable table_from_analysis_json(std::string_view text, std::string id,
                                       std::string title) {
  std::string kind;
  try {
    const json j = json::parse(text);
    if (j.is_object()) kind = j.value("kind", std::string());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "analysis result is not valid JSON", {e.what()});
  }
  if (kind == "correlation") {
    return correlation_table(correlation_from_json(text), std::move(id), std::move(title));
  }
  if (kind == "hierarchical") {
    return regression_table(hierarchical_from_json(text), std::move(id), std::move(title));
  }
  throw Error(ErrorKind::kRender, "unsupported analysis kind", {kind.empty() ? "<none>" : kind});
}

Histogram histogram(std::span<const double> values, int bins, std::optional<double> lo,
                    std::optional<double> hi) {
  if (bins < 1) throw Error(ErrorKind::kRange, fmt::format("bins must be >= 1, got {}", bins));
  if (values.empty() && (!lo || !hi)) {
    throw Error(ErrorKind::kSize, "histogram of an empty sample needs explicit bounds");
  }
  double a = lo.value_or(values.empty() ? 0.0 : *std::min_element(values.begin(), values.end()));
  double b = hi.value_or(values.empty() ? 1.0 : *std::max_element(values.begin(), values.end()));
  if (!(a < b)) {
    if (a > b) throw Error(ErrorKind::kRange, "histogram lower bound exceeds upper bound");
    a -= 0.5;
    b += 0.5;
  }
  Histogram h;
  const double width = (b - a) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? b : a + width * i);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    if (std::isnan(v) || v < a || v > b) continue;
    auto idx = static_cast<std::size_t>((v - a) / width);
    if (idx >= h.counts.size()) idx = h.counts.size() - 1;
    // Floating error near an interior edge: trust the stored edges.
    while (idx > 0 && v < h.edges[idx]) --idx;
    while (idx + 1 < h.counts.size() && v >= h.edges[idx + 1]) ++idx;
    ++h.counts[idx];
  }
  return h;
}

RenderedTable histogram_table(const Histogram& hist, std::string id, std::string title) {
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"bin_lo", "bin_hi", "count"};
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    t.rows.push_back({format_fixed(hist.edges[i], 4), format_fixed(hist.edges[i + 1], 4),
                      std::to_string(hist.counts[i])});
  }
  return t;
}

RenderedTable yearly_density_table(const CorpusDataset& dataset, int bins, std::string id,
                                   std::string title) {
  std::map<int, std::vector<double>> by_year;
  std::vector<double> all;
  for (const auto& r : dataset.records()) {
    if (!r.clarity_mean) continue;
    by_year[r.publish_date.year()].push_back(*r.clarity_mean);
    all.push_back(*r.clarity_mean);
  }
  if (bins < 1) throw Error(ErrorKind::kRange, fmt::format("bins must be >= 1, got {}", bins));
  RenderedTable t;
  t.id = std::move(id);
  t.title = std::move(title);
  t.headers = {"year", "n", "bin_lo", "bin_hi", "count", "density"};
  if (all.empty()) return t;
  const Histogram grid = histogram(all, bins);
  const double lo = grid.edges.front();
  const double hi = grid.edges.back();
  const double width = (hi - lo) / bins;
  for (const auto& [year, v] : by_year) {
    const Histogram h = histogram(v, bins, lo, hi);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      const double density = static_cast<double>(h.counts[i]) / (static_cast<double>(v.size()) * width);
      t.rows.push_back({std::to_string(year), std::to_string(v.size()),
                        format_fixed(h.edges[i], 4), format_fixed(h.edges[i + 1], 4),
                        std::to_string(h.counts[i]), format_fixed(density, 6)});
    }
  }
  return t;
}

}  // namespace clarity
