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

#include "clarity/trends.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "clarity/csv.hpp"
#include "clarity/error.hpp"

namespace clarity {

TrendSeries::TrendSeries(std::vector<TrendPoint> points, TrendQuery query)
    : points_(std::move(points)), query_(std::move(query)) {
  if (query_.last < query_.first) {
    throw Error(ErrorKind::kRange, "trend window is empty",
                {query_.first.to_string(), query_.last.to_string()});
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].rsv >= 0.0 && points_[i].rsv <= 100.0)) {
      throw Error(ErrorKind::kRange, "RSV outside [0, 100]",
                  {points_[i].month.to_string(), format_number(points_[i].rsv)});
    }
    if (i > 0 && !(points_[i - 1].month < points_[i].month)) {
      throw Error(ErrorKind::kOrdering, "trend months are not strictly increasing",
                  {points_[i - 1].month.to_string(), points_[i].month.to_string()});
    }
  }
}

std::optional<double> TrendSeries::at(const YearMonth& month) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), month,
                             [](const TrendPoint& p, const YearMonth& m) { return p.month < m; });
  if (it == points_.end() || it->month != month) return std::nullopt;
  return it->rsv;
}

TrendSeries compute_rsv(std::span<const SharePoint> shares, TrendQuery query) {
  double peak = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (!(shares[i].share >= 0.0) || !std::isfinite(shares[i].share)) {
      throw Error(ErrorKind::kRange, "search share must be a nonnegative number",
                  {shares[i].month.to_string()});
    }
    if (i > 0 && !(shares[i - 1].month < shares[i].month)) {
      throw Error(ErrorKind::kOrdering, "share months are not strictly increasing",
                  {shares[i - 1].month.to_string(), shares[i].month.to_string()});
    }
    peak = std::max(peak, shares[i].share);
  }
  if (peak <= 0.0) throw Error(ErrorKind::kDegenerate, "all search shares are zero");

  std::vector<TrendPoint> points;
  points.reserve(shares.size());
  for (const auto& s : shares) {
    // share == peak gives exactly 100.
    points.push_back({s.month, 100.0 * (s.share / peak)});
  }
  return TrendSeries(std::move(points), std::move(query));
}

CorpusDataset attach_trend_index(const CorpusDataset& dataset, const TrendSeries& series) {
  std::vector<std::string> missing;
  std::vector<TalkRecord> out;
  out.reserve(dataset.size());
  for (const auto& r : dataset.records()) {
    auto month = YearMonth::of(r.publish_date);
    auto value = series.at(month);
    if (!value) {
      missing.push_back(fmt::format("{} ({})", r.id, month.to_string()));
      continue;
    }
    TalkRecord copy = r;
    copy.trend_index = *value;
    out.push_back(std::move(copy));
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::kCoverage, "publish month outside the trend series",
                std::move(missing));
  }
  return dataset.with_records(std::move(out));
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_value(const std::string& text, std::size_t row) {
  if (text == "<1") return 0.0;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kParse, fmt::format("trend row {}: invalid value", row), {text});
  }
  return v;
}

}  // namespace

TrendSeries parse_trend_csv(std::string_view text, bool normalized, TrendQuery query) {
  auto rows = csv::read(text);
  std::size_t start = 0;
  // Skip any preamble up to and including the header row.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto first = rows[i].fields.empty() ? std::string() : trim(rows[i].fields[0]);
    std::string lower = first;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "month" || lower == "week" || lower == "date") {
      start = i + 1;
      break;
    }
  }
  std::vector<SharePoint> values;
  for (std::size_t i = start; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() < 2) {
      throw Error(ErrorKind::kParse, fmt::format("trend row {}: expected month,value", i + 1));
    }
    values.push_back({YearMonth::parse(trim(f[0])), parse_value(trim(f[1]), i + 1)});
  }
  if (normalized) {
    std::vector<TrendPoint> points;
    points.reserve(values.size());
    for (const auto& v : values) points.push_back({v.month, v.share});
    return TrendSeries(std::move(points), std::move(query));
  }
  return compute_rsv(values, std::move(query));
}

TrendSeries load_trend_csv(const std::filesystem::path& path, bool normalized, TrendQuery query) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open trend file", {path.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trend_csv(ss.str(), normalized, std::move(query));
}

}  // namespace clarity
