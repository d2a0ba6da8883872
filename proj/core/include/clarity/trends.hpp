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

#ifndef CLARITY_TRENDS_HPP_
#define CLARITY_TRENDS_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/corpus.hpp"
#include "clarity/date.hpp"

namespace clarity {

struct TrendQuery {
  std::string topic = "TED";
  std::string region = "Worldwide";
  Date first = Date(2006, 12, 25);
  Date last = Date(2013, 12, 23);  // inclusive
};

// Search share of the topic in one month: searches for the topic divided by
// all searches in the region at that time.
struct SharePoint {
  YearMonth month;
  double share = 0.0;
};

struct TrendPoint {
  YearMonth month;
  double rsv = 0.0;  // Relative Search Volume, [0, 100]
};

// Monthly Relative Search Volume series. Months strictly increasing, values
// in [0, 100].
class TrendSeries {
 public:
  TrendSeries() = default;
  // Throws Error(kOrdering) for non-increasing months and Error(kRange) for
  // values outside [0, 100].
  TrendSeries(std::vector<TrendPoint> points, TrendQuery query);

  const std::vector<TrendPoint>& points() const { return points_; }
  const TrendQuery& query() const { return query_; }
  std::optional<double> at(const YearMonth& month) const;

 private:
  std::vector<TrendPoint> points_;
  TrendQuery query_;
};

// RSV_t = 100 * share_t / max_tau share_tau. The argmax month is exactly 100.
// Errors: all-zero shares (kDegenerate), negative share (kRange), months not
// strictly increasing (kOrdering).
TrendSeries compute_rsv(std::span<const SharePoint> shares, TrendQuery query = {});

// Sets trend_index on every record to the RSV of its publish month. Throws
// Error(kCoverage) listing ids whose month is not in the series.
CorpusDataset attach_trend_index(const CorpusDataset& dataset, const TrendSeries& series);

// Reads `month,value` CSV. Also accepts the trends tool export layout (a
// "Category:" preamble, then a header whose first cell is "Month"), where
// "<1" cells are read as 0. With `normalized` the values are taken verbatim as
// RSV; otherwise they are raw shares passed through compute_rsv.
TrendSeries parse_trend_csv(std::string_view text, bool normalized, TrendQuery query = {});
TrendSeries load_trend_csv(const std::filesystem::path& path, bool normalized,
                           TrendQuery query = {});

}  // namespace clarity

#endif  // CLARITY_TRENDS_HPP_
