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

#ifndef CLARITY_REPORT_HPP_
#define CLARITY_REPORT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarity/corpus.hpp"
#include "clarity/stats.hpp"

namespace clarity {

enum class TableFormat { kMarkdown, kCsv, kJson };

TableFormat parse_table_format(std::string_view text);  // "md"/"markdown", "csv", "json"
std::string_view extension(TableFormat format);

struct RenderedTable {
  std::string id;
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  std::string legend;

  // Throws Error(kRender) if any row width differs from the header width.
  void validate() const;
  friend bool operator==(const RenderedTable&, const RenderedTable&) = default;
};

std::string render(const RenderedTable& table, TableFormat format);

// Inverse of the csv rendering (headers and cells only).
RenderedTable table_from_csv(std::string_view text);
RenderedTable table_from_json(std::string_view text);

// table_<id>_<dep>.<ext>, or table_<id>.<ext> when dep is empty.
std::string table_file_name(std::string_view id, std::string_view dependent, TableFormat format);

// Cell formatting. Non-finite values render as "n/a"; negative zero as zero.
std::string format_fixed(double value, int decimals);
// ".373", "-.255"; used for correlations.
std::string format_correlation(double r);
// "***" p<.001, "**" p<.01, "*" p<.05.
std::string regression_stars(double p);
// "**" p<.01, "*" p<.05.
std::string correlation_stars(double p);

struct Descriptive {
  std::string name;
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double sd = 0.0;
};

// Uses the non-missing values of each column. Throws Error(kContent) if a
// column has no values and Error(kSpec) if it does not exist.
std::vector<Descriptive> describe(const DataFrame& frame, std::span<const std::string> names);
RenderedTable descriptives_table(std::span<const Descriptive> rows, std::string id,
                                 std::string title);

struct YearStats {
  int year = 0;
  std::size_t n = 0;
  double clarity_mean = 0.0;
  double clarity_sd = 0.0;
  double structure_mean = 0.0;
  double structure_sd = 0.0;
};

// Records with both scores, grouped by publish year ascending; years with
// fewer than two talks are omitted.
std::vector<YearStats> summarize_years(const CorpusDataset& dataset);
RenderedTable yearly_table(std::span<const YearStats> rows, std::string id, std::string title);

struct StabilityRow {
  std::string category;  // "Total" for the summary row
  double mean_agreement = 0.0;
  std::size_t n = 0;
  double sd = 0.0;
};

// Per-category rows in category order (empty categories omitted), then a
// Total row. Records without topic and agreement are skipped.
std::vector<StabilityRow> summarize_stability(const CorpusDataset& dataset);
RenderedTable stability_table(std::span<const StabilityRow> rows, std::string id,
                              std::string title);

// Upper-triangular matrix with "1" on the diagonal and stars per
// correlation_stars. `labels` overrides the header names when non-empty.
RenderedTable correlation_table(const CorrelationMatrix& matrix, std::string id,
                                std::string title,
                                std::span<const std::string> labels = {});

// One row per predictor per step: Step, Predictor, B, beta, t, p, F, R2, dR2.
// Dummy columns of a categorical term print as "<level> (vs. <reference>)".
RenderedTable regression_table(const HierarchicalResult& result, std::string id,
                               std::string title);

// Full-precision JSON for analysis results; "kind" identifies the type.
std::string analysis_json(const CorrelationMatrix& matrix);
std::string analysis_json(const HierarchicalResult& result);
CorrelationMatrix correlation_from_json(std::string_view text);
HierarchicalResult hierarchical_from_json(std::string_view text);

// Renders a stored analysis JSON document; unknown kinds throw Error(kRender).
RenderedTable table_from_analysis_json(std::string_view text, std::string id,
                                       std::string title);

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> counts;
};

// Equal-width bins over [lo, hi] (defaults: data min/max); the last bin is
// closed. Values outside the range are dropped. bins < 1 throws Error(kRange).
Histogram histogram(std::span<const double> values, int bins,
                    std::optional<double> lo = std::nullopt,
                    std::optional<double> hi = std::nullopt);
RenderedTable histogram_table(const Histogram& hist, std::string id, std::string title);

// Per-year binned clarity densities on a shared grid: year, bin_lo, bin_hi,
// count, density (count / (n * width)).
RenderedTable yearly_density_table(const CorpusDataset& dataset, int bins, std::string id,
                                   std::string title);

}  // namespace clarity

#endif  // CLARITY_REPORT_HPP_
