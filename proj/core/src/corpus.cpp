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

#include "clarity/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include "json.hpp"

#include "clarity/csv.hpp"
#include "clarity/error.hpp"

namespace clarity {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Category

std::string_view name(Category c) {
  switch (c) {
    case Category::kCosmos: return "Cosmos";
    case Category::kEntertainment: return "Entertainment";
    case Category::kEnvironment: return "Environment";
    case Category::kHealth: return "Health";
    case Category::kMind: return "Mind";
    case Category::kSociety: return "Society";
    case Category::kTech: return "Tech";
  }
  return "";
}

std::optional<Category> parse_category(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  for (Category c : kAllCategories) {
    const auto n = name(c);
    if (n.size() != text.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < n.size() && same; ++i) {
      same = std::tolower(static_cast<unsigned char>(n[i])) ==
             std::tolower(static_cast<unsigned char>(text[i]));
    }
    if (same) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Phases

std::string_view to_string(Phase phase) {
  return phase == Phase::kEarly ? "early" : "late";
}

Phase parse_phase(std::string_view text) {
  if (text == "early" || text == "Early") return Phase::kEarly;
  if (text == "late" || text == "Late") return Phase::kLate;
  throw Error(ErrorKind::kParse, "unknown phase", {std::string(text)});
}

PhaseWindows::PhaseWindows(std::vector<PhaseWindow> windows)
    : windows_(std::move(windows)) {
  for (const auto& w : windows_) {
    if (w.last < w.first) {
      throw Error(ErrorKind::kConfig, "phase window ends before it starts",
                  {w.first.to_string(), w.last.to_string()});
    }
  }
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    for (std::size_t j = i + 1; j < windows_.size(); ++j) {
      const auto& a = windows_[i];
      const auto& b = windows_[j];
      if (!(a.last < b.first || b.last < a.first)) {
        throw Error(ErrorKind::kConfig, "phase windows overlap",
                    {a.first.to_string() + ".." + a.last.to_string(),
                     b.first.to_string() + ".." + b.last.to_string()});
      }
    }
  }
}

PhaseWindows PhaseWindows::defaults() {
  return PhaseWindows({
      {Phase::kEarly, Date(2006, 12, 25), Date(2013, 12, 23)},
      {Phase::kLate, Date(2017, 1, 1), Date(2017, 12, 31)},
      {Phase::kLate, Date(2019, 1, 1), Date(2019, 12, 31)},
  });
}

std::optional<Phase> PhaseWindows::classify(const Date& date) const {
  for (const auto& w : windows_) {
    if (!(date < w.first) && !(w.last < date)) return w.label;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Records

std::optional<bool> TalkRecord::sci_label() const {
  if (!sci_mean) return std::nullopt;
  return *sci_mean > 0.5;
}

TalkRecord validate_talk(TalkRecord record, const PhaseWindows& windows) {
  std::optional<ErrorKind> first;
  std::vector<std::string> problems;
  auto fail = [&](ErrorKind kind, std::string what) {
    if (!first) first = kind;
    problems.push_back(std::move(what));
  };

  const bool blank = std::all_of(record.transcript.begin(), record.transcript.end(),
                                 [](unsigned char c) { return std::isspace(c); });
  if (blank) fail(ErrorKind::kContent, "empty transcript");
  if (record.duration_s <= 0) {
    fail(ErrorKind::kRange, fmt::format("duration_s must be > 0 (got {})", record.duration_s));
  }
  if (record.views_raw < 0) {
    fail(ErrorKind::kRange, fmt::format("views_raw must be >= 0 (got {})", record.views_raw));
  }
  if (record.likes_raw < 0) {
    fail(ErrorKind::kRange, fmt::format("likes_raw must be >= 0 (got {})", record.likes_raw));
  }
  if (record.clarity_mean && (*record.clarity_mean < 1.0 || *record.clarity_mean > 10.0)) {
    fail(ErrorKind::kRange, "clarity_mean outside [1, 10]");
  }
  if (record.structure_mean &&
      (*record.structure_mean < 1.0 || *record.structure_mean > 10.0)) {
    fail(ErrorKind::kRange, "structure_mean outside [1, 10]");
  }
  if (record.sci_mean && (*record.sci_mean < 0.0 || *record.sci_mean > 1.0)) {
    fail(ErrorKind::kRange, "sci_mean outside [0, 1]");
  }
  if (record.trend_index && (*record.trend_index < 0.0 || *record.trend_index > 100.0)) {
    fail(ErrorKind::kRange, "trend_index outside [0, 100]");
  }
  if (record.topic_agreement &&
      (*record.topic_agreement <= 0.0 || *record.topic_agreement > 100.0)) {
    fail(ErrorKind::kRange, "topic_agreement outside (0, 100]");
  }
  const auto phase = windows.classify(record.publish_date);
  if (!phase) {
    fail(ErrorKind::kPhase,
         fmt::format("publish_date {} outside every phase window",
                     record.publish_date.to_string()));
  } else {
    record.phase = *phase;
  }

  if (first) {
    throw Error(*first, fmt::format("invalid talk '{}'", record.id), std::move(problems));
  }
  return record;
}

// ---------------------------------------------------------------------------
// Dataset

CorpusDataset::CorpusDataset(std::vector<TalkRecord> records, Provenance provenance)
    : records_(std::move(records)), provenance_(std::move(provenance)) {
  std::vector<std::string> duplicates;
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].id, i).second) duplicates.push_back(records_[i].id);
  }
  if (!duplicates.empty()) {
    throw Error(ErrorKind::kIntegrity, "duplicate talk ids", std::move(duplicates));
  }
}

const TalkRecord* CorpusDataset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

// ---------------------------------------------------------------------------
// Formats and mapping

CorpusFormat parse_corpus_format(std::string_view text) {
  if (text == "csv") return CorpusFormat::kCsv;
  if (text == "jsonl") return CorpusFormat::kJsonl;
  throw Error(ErrorKind::kConfig, "unknown corpus format", {std::string(text)});
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? CorpusFormat::kJsonl : CorpusFormat::kCsv;
}

const std::vector<std::string>& required_columns() {
  static const std::vector<std::string> cols = {
      "id", "title", "publish_date", "duration_s", "views_raw", "likes_raw", "transcript"};
  return cols;
}

const std::vector<std::string>& optional_columns() {
  static const std::vector<std::string> cols = {
      "clarity_mean", "structure_mean", "sci_mean",  "topic",    "trend_index",
      "readability",  "topic_agreement", "views_log", "likes_log"};
  return cols;
}

namespace {

bool is_canonical(const std::string& name) {
  const auto& req = required_columns();
  const auto& opt = optional_columns();
  return std::find(req.begin(), req.end(), name) != req.end() ||
         std::find(opt.begin(), opt.end(), name) != opt.end();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open file", {path.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  text = trim(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc{} && ptr == text.data() + text.size() && !text.empty()) return v;
  // Accept integral floating text such as "871.0".
  if (auto d = parse_double(text); d && std::floor(*d) == *d && std::fabs(*d) < 9.0e15) {
    return static_cast<std::int64_t>(*d);
  }
  return std::nullopt;
}

// Row accessor shared by the CSV and JSONL paths: returns the raw cell text,
// or nullopt when the cell is absent/empty/null.
struct RowCells {
  std::function<std::optional<std::string>(const std::string& column)> get;
};

class RowParser {
 public:
  RowParser(const ColumnMapping& mapping, std::size_t row) : mapping_(mapping), row_(row) {}

  std::string required_text(const RowCells& cells, const std::string& field) const {
    auto v = cells.get(mapping_.source(field));
    return v ? *v : std::string();
  }

  std::int64_t required_int(const RowCells& cells, const std::string& field) const {
    auto text = required_text(cells, field);
    auto v = parse_int(text);
    if (!v) fail(field, text);
    return *v;
  }

  std::optional<double> optional_number(const RowCells& cells, const std::string& field) const {
    auto text = cells.get(mapping_.source(field));
    if (!text || trim(*text).empty()) return std::nullopt;
    auto v = parse_double(*text);
    if (!v) fail(field, *text);
    return v;
  }

  [[noreturn]] void fail(const std::string& field, const std::string& text) const {
    throw Error(ErrorKind::kParse,
                fmt::format("row {}: cannot parse column '{}'", row_, mapping_.source(field)),
                {text});
  }

  std::size_t row() const { return row_; }

 private:
  const ColumnMapping& mapping_;
  std::size_t row_;
};

TalkRecord parse_record(const RowCells& cells, const ColumnMapping& mapping, std::size_t row) {
  RowParser p(mapping, row);
  TalkRecord r;
  r.id = std::string(trim(p.required_text(cells, "id")));
  if (r.id.empty()) p.fail("id", "");
  r.title = p.required_text(cells, "title");
  {
    auto date_text = std::string(trim(p.required_text(cells, "publish_date")));
    try {
      r.publish_date = Date::parse(date_text);
    } catch (const Error&) {
      p.fail("publish_date", date_text);
    }
  }
  r.duration_s = p.required_int(cells, "duration_s");
  r.views_raw = p.required_int(cells, "views_raw");
  r.likes_raw = p.required_int(cells, "likes_raw");
  r.transcript = p.required_text(cells, "transcript");

  r.clarity_mean = p.optional_number(cells, "clarity_mean");
  r.structure_mean = p.optional_number(cells, "structure_mean");
  r.sci_mean = p.optional_number(cells, "sci_mean");
  r.trend_index = p.optional_number(cells, "trend_index");
  r.readability = p.optional_number(cells, "readability");
  r.topic_agreement = p.optional_number(cells, "topic_agreement");
  r.views_log = p.optional_number(cells, "views_log");
  r.likes_log = p.optional_number(cells, "likes_log");
  if (auto topic = cells.get(mapping.source("topic")); topic && !trim(*topic).empty()) {
    r.topic = parse_category(*topic);
    if (!r.topic) p.fail("topic", *topic);
  }
  return r;
}

// Validates rows, collecting out-of-window dates so they can be reported
// together.
class Collector {
 public:
  explicit Collector(const PhaseWindows& windows) : windows_(windows) {}

  void add(TalkRecord record, std::size_t row) {
    if (!windows_.classify(record.publish_date)) {
      out_of_window_.push_back(fmt::format("{} ({})", record.id, record.publish_date.to_string()));
      return;
    }
    try {
      records_.push_back(validate_talk(std::move(record), windows_));
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("row {}: {}", row, e.what()), e.details());
    }
  }

  CorpusDataset finish(std::string source) {
    if (!out_of_window_.empty()) {
      throw Error(ErrorKind::kPhase,
                  fmt::format("{} record(s) dated outside every phase window",
                              out_of_window_.size()),
                  std::move(out_of_window_));
    }
    return CorpusDataset(std::move(records_), Provenance{std::move(source)});
  }

 private:
  const PhaseWindows& windows_;
  std::vector<TalkRecord> records_;
  std::vector<std::string> out_of_window_;
};

CorpusDataset parse_csv_corpus(std::string_view text, const LoadOptions& options,
                               std::string source) {
  auto rows = csv::read(text);
  if (rows.empty()) throw Error(ErrorKind::kSchema, "missing header row");
  const auto& header = rows.front().fields;

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[std::string(trim(header[i]))] = i;
  for (const auto& field : required_columns()) {
    const auto& src = options.mapping.source(field);
    if (!col.count(src)) throw Error(ErrorKind::kSchema, "missing required column", {src});
  }

  // Unknown columns whose non-empty cells are all numeric become extras.
  std::set<std::string> mapped;
  for (const auto& f : required_columns()) mapped.insert(options.mapping.source(f));
  for (const auto& f : optional_columns()) mapped.insert(options.mapping.source(f));
  std::vector<std::pair<std::string, std::size_t>> extras;
  for (const auto& [name, idx] : col) {
    if (mapped.count(name) || name.empty()) continue;
    bool numeric = true;
    for (std::size_t r = 1; r < rows.size() && numeric; ++r) {
      const auto& f = rows[r].fields;
      if (idx < f.size() && !trim(f[idx]).empty()) numeric = parse_double(f[idx]).has_value();
    }
    if (numeric) extras.emplace_back(name, idx);
  }

  Collector collector(options.windows);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    const std::size_t row_number = r;  // data row number, 1-based
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::kParse,
                  fmt::format("row {}: expected {} fields, found {}", row_number,
                              header.size(), fields.size()),
                  {fmt::format("line {}", rows[r].line)});
    }
    RowCells cells{[&](const std::string& column) -> std::optional<std::string> {
      auto it = col.find(column);
      if (it == col.end()) return std::nullopt;
      return fields[it->second];
    }};
    TalkRecord record = parse_record(cells, options.mapping, row_number);
    for (const auto& [name, idx] : extras) {
      if (auto v = parse_double(fields[idx])) record.extras[name] = *v;
    }
    collector.add(std::move(record), row_number);
  }
  return collector.finish(std::move(source));
}

std::optional<std::string> json_cell(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  if (it->is_number()) return format_number(it->get<double>());
  if (it->is_boolean()) return it->get<bool>() ? "1" : "0";
  return it->dump();
}

CorpusDataset parse_jsonl_corpus(std::string_view text, const LoadOptions& options,
                                 std::string source) {
  std::set<std::string> mapped;
  for (const auto& f : required_columns()) mapped.insert(options.mapping.source(f));
  for (const auto& f : optional_columns()) mapped.insert(options.mapping.source(f));

  Collector collector(options.windows);
  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    ++row;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParse, fmt::format("row {}: invalid JSON", row), {e.what()});
    }
    if (!obj.is_object()) throw Error(ErrorKind::kParse, fmt::format("row {}: not an object", row));
    for (const auto& field : required_columns()) {
      const auto& src = options.mapping.source(field);
      if (!obj.contains(src)) {
        throw Error(ErrorKind::kSchema,
                    fmt::format("row {}: missing required column", row), {src});
      }
    }
    RowCells cells{[&](const std::string& column) { return json_cell(obj, column); }};
    TalkRecord record = parse_record(cells, options.mapping, row);
    if (auto it = obj.find("extras"); it != obj.end() && it->is_object()) {
      for (const auto& [k, v] : it->items()) {
        if (v.is_number()) record.extras[k] = v.get<double>();
      }
    }
    for (const auto& [k, v] : obj.items()) {
      if (!mapped.count(k) && k != "extras" && k != "phase" && v.is_number()) {
        record.extras[k] = v.get<double>();
      }
    }
    collector.add(std::move(record), row);
    if (nl == text.size()) break;
  }
  return collector.finish(std::move(source));
}

}  // namespace

ColumnMapping::ColumnMapping(std::map<std::string, std::string> source_for_field)
    : source_for_field_(std::move(source_for_field)) {
  for (const auto& [canonical, source] : source_for_field_) {
    if (!is_canonical(canonical)) {
      throw Error(ErrorKind::kSchema, "column mapping names an unknown field", {canonical});
    }
  }
}

ColumnMapping ColumnMapping::from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "column mapping is not valid JSON", {e.what()});
  }
  if (!j.is_object()) throw Error(ErrorKind::kSchema, "column mapping must be a JSON object");
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::kSchema, "column mapping values must be strings", {k});
    m[k] = v.get<std::string>();
  }
  return ColumnMapping(std::move(m));
}

ColumnMapping ColumnMapping::from_file(const std::filesystem::path& path) {
  return from_json(read_file(path));
}

const std::string& ColumnMapping::source(const std::string& canonical) const {
  auto it = source_for_field_.find(canonical);
  return it == source_for_field_.end() ? canonical : it->second;
}

CorpusDataset parse_corpus(std::string_view text, CorpusFormat format,
                           const LoadOptions& options, std::string source) {
  return format == CorpusFormat::kCsv ? parse_csv_corpus(text, options, std::move(source))
                                      : parse_jsonl_corpus(text, options, std::move(source));
}

CorpusDataset load_corpus(const std::filesystem::path& path, CorpusFormat format,
                          const LoadOptions& options) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorKind::kIo, "corpus file does not exist", {path.string()});
  }
  return parse_corpus(read_file(path), format, options, path.string());
}

// ---------------------------------------------------------------------------
// Export

std::string format_number(double value) { return fmt::format("{}", value); }

namespace {

struct OptionalField {
  const char* name;
  std::optional<std::string> (*get)(const TalkRecord&);
};

std::optional<std::string> num(const std::optional<double>& v) {
  if (!v) return std::nullopt;
  return format_number(*v);
}

const std::vector<OptionalField>& optional_fields() {
  static const std::vector<OptionalField> fields = {
      {"clarity_mean", [](const TalkRecord& r) { return num(r.clarity_mean); }},
      {"structure_mean", [](const TalkRecord& r) { return num(r.structure_mean); }},
      {"sci_mean", [](const TalkRecord& r) { return num(r.sci_mean); }},
      {"topic",
       [](const TalkRecord& r) -> std::optional<std::string> {
         if (!r.topic) return std::nullopt;
         return std::string(name(*r.topic));
       }},
      {"trend_index", [](const TalkRecord& r) { return num(r.trend_index); }},
      {"readability", [](const TalkRecord& r) { return num(r.readability); }},
      {"topic_agreement", [](const TalkRecord& r) { return num(r.topic_agreement); }},
      {"views_log", [](const TalkRecord& r) { return num(r.views_log); }},
      {"likes_log", [](const TalkRecord& r) { return num(r.likes_log); }},
  };
  return fields;
}

}  // namespace

std::string serialize_corpus(const CorpusDataset& dataset, CorpusFormat format) {
  std::ostringstream out;
  if (format == CorpusFormat::kJsonl) {
    for (const auto& r : dataset.records()) {
      json j = json::object();
      j["id"] = r.id;
      j["title"] = r.title;
      j["publish_date"] = r.publish_date.to_string();
      j["duration_s"] = r.duration_s;
      j["views_raw"] = r.views_raw;
      j["likes_raw"] = r.likes_raw;
      j["transcript"] = r.transcript;
      j["phase"] = std::string(to_string(r.phase));
      for (const auto& f : optional_fields()) {
        if (auto v = f.get(r)) {
          if (std::string_view(f.name) == "topic") {
            j[f.name] = *v;
          } else {
            j[f.name] = json::parse(*v);
          }
        }
      }
      if (!r.extras.empty()) j["extras"] = r.extras;
      out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
    return out.str();
  }

  std::vector<std::string> header = required_columns();
  std::vector<const OptionalField*> present;
  for (const auto& f : optional_fields()) {
    const bool any = std::any_of(dataset.records().begin(), dataset.records().end(),
                                 [&](const TalkRecord& r) { return f.get(r).has_value(); });
    if (any) {
      present.push_back(&f);
      header.emplace_back(f.name);
    }
  }
  std::set<std::string> extra_names;
  for (const auto& r : dataset.records()) {
    for (const auto& [k, v] : r.extras) extra_names.insert(k);
  }
  header.insert(header.end(), extra_names.begin(), extra_names.end());
  csv::write_row(out, header);

  for (const auto& r : dataset.records()) {
    std::vector<std::string> row = {r.id,
                                    r.title,
                                    r.publish_date.to_string(),
                                    std::to_string(r.duration_s),
                                    std::to_string(r.views_raw),
                                    std::to_string(r.likes_raw),
                                    r.transcript};
    for (const auto* f : present) row.push_back(f->get(r).value_or(""));
    for (const auto& k : extra_names) {
      auto it = r.extras.find(k);
      row.push_back(it == r.extras.end() ? "" : format_number(it->second));
    }
    csv::write_row(out, row);
  }
  return out.str();
}

void write_corpus(const CorpusDataset& dataset, const std::filesystem::path& path,
                  CorpusFormat format) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write file", {path.string()});
  out << serialize_corpus(dataset, format);
}

}  // namespace clarity
