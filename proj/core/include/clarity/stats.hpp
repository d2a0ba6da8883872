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

#ifndef CLARITY_STATS_HPP_
#define CLARITY_STATS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clarity {

enum class ColumnKind { kContinuous, kDummy };

// A named numeric variable. Values are finite; dummy columns hold only 0/1.
struct VariableColumn {
  std::string name;
  std::vector<double> values;
  ColumnKind kind = ColumnKind::kContinuous;

  // Throws Error(kRange) on non-finite values or non-0/1 dummy entries.
  void validate() const;
};

double mean(std::span<const double> values);
double sample_sd(std::span<const double> values);  // n - 1 denominator

// Throws Error(kSize) unless the lengths match and n >= 3, and
// Error(kDegenerate) when either variance is zero.
double pearson(std::span<const double> x, std::span<const double> y);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

double spearman(std::span<const double> x, std::span<const double> y);

// Two-tailed p for H0: rho = 0, via t = r sqrt((n - 2) / (1 - r^2)) on n - 2
// df. |r| == 1 gives exactly 0.
double correlation_p_value(double r, std::size_t n);

enum class CorrelationMethod { kPearson, kSpearman };

struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> r;
  std::vector<std::vector<double>> p;
  std::size_t n = 0;
  CorrelationMethod method = CorrelationMethod::kPearson;
};

// All pairwise coefficients over the given order. Needs >= 2 equal-length
// columns.
CorrelationMatrix correlation_matrix(std::span<const VariableColumn> columns,
                                     CorrelationMethod method);

// One 0/1 column per non-reference level, in name order. Throws
// Error(kCoding) when `reference` does not occur in `labels`.
std::vector<VariableColumn> dummy_code(std::span<const std::string> labels,
                                       std::string_view reference);

// Columnar data with missing values: NaN for numeric, nullopt for categorical.
class DataFrame {
 public:
  void add_numeric(std::string name, std::vector<double> values,
                   ColumnKind kind = ColumnKind::kContinuous);
  void add_categorical(std::string name, std::vector<std::optional<std::string>> labels);

  std::size_t rows() const { return rows_; }
  bool has_numeric(const std::string& name) const { return numeric_.count(name) > 0; }
  bool has_categorical(const std::string& name) const { return categorical_.count(name) > 0; }
  bool has(const std::string& name) const { return has_numeric(name) || has_categorical(name); }

  const VariableColumn& numeric(const std::string& name) const;
  const std::vector<std::optional<std::string>>& categorical(const std::string& name) const;

  // Row mask: true where every listed column is present.
  std::vector<bool> complete_rows(std::span<const std::string> names) const;

 private:
  void check_rows(std::size_t n, const std::string& name);

  std::size_t rows_ = 0;
  bool sized_ = false;
  std::map<std::string, VariableColumn> numeric_;
  std::map<std::string, std::vector<std::optional<std::string>>> categorical_;
};

// Correlation matrix over the named numeric columns after listwise deletion.
CorrelationMatrix correlation_matrix(const DataFrame& frame, std::span<const std::string> names,
                                     CorrelationMethod method);

// ---------------------------------------------------------------------------
// Least squares

struct OlsFit {
  std::vector<std::string> names;  // "(Intercept)" then predictors
  std::vector<double> b;
  std::vector<double> se;
  std::vector<double> t;
  std::vector<double> p;  // two-tailed
  std::vector<double> residuals;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f = 0.0;    // overall F on (df_model, df_resid)
  double f_p = 1.0;
  int df_model = 0;
  int df_resid = 0;
  std::size_t n = 0;
  double rss = 0.0;
  double tss = 0.0;
};

// Least squares with an intercept added internally, solved by column-pivoted
// Householder QR. Throws Error(kSize) unless n > k + 1 and
// Error(kCollinearity) naming the columns that are linearly dependent.
OlsFit ols_fit(std::span<const VariableColumn> predictors, const VariableColumn& y);

// beta_j = b_j sd(x_j) / sd(y) for every predictor (dummies included).
// Throws Error(kDegenerate) for a zero-variance predictor.
std::vector<double> standardized_betas(const OlsFit& fit,
                                       std::span<const VariableColumn> predictors,
                                       const VariableColumn& y);

// Elementwise products named "A × B". A categorical side expands to one
// product per dummy ("Health × Clarity", ...). Throws Error(kSpec) when a
// column is missing.
std::vector<VariableColumn> interaction_terms(
    std::span<const std::pair<std::string, std::string>> pairs, const DataFrame& frame,
    std::string_view reference);

inline constexpr std::string_view kInteractionSeparator = " \xC3\x97 ";  // " × "

struct RegressionModelSpec {
  std::string dependent;
  // Cumulative term lists; each step must strictly extend the previous one.
  // A term is a numeric column, a categorical column (expanded to dummies
  // against `reference`), or "A × B".
  std::vector<std::vector<std::string>> steps;
  std::string reference = "Society";
  std::vector<std::string> step_labels;  // optional, e.g. {"I", "II", "III"}

  // Throws Error(kSpec) on a non-nested or empty spec.
  void validate() const;
  static RegressionModelSpec from_json(std::string_view text);
  std::string to_json() const;
};

struct PredictorResult {
  std::string name;
  std::string term;  // spec term that produced this column
  double b = 0.0;
  double beta = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
};

struct RegressionStepResult {
  std::string label;
  double intercept = 0.0;
  std::vector<PredictorResult> predictors;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double delta_r2 = 0.0;  // vs previous step; equals r2 for the first
  double f = 0.0;         // overall model F
  double f_p = 1.0;
  double f_change = 0.0;
  double f_change_p = 1.0;
  int df_model = 0;
  int df_resid = 0;
  int df_change = 0;
  std::size_t n = 0;

  const PredictorResult* find(std::string_view name) const;
};

struct HierarchicalResult {
  std::string dependent;
  std::string reference;
  std::vector<RegressionStepResult> steps;
  std::size_t n = 0;          // after listwise deletion
  std::size_t n_dropped = 0;  // rows removed for missing values
};

// Fits every step on the same listwise-complete rows.
HierarchicalResult hierarchical_regression(const RegressionModelSpec& spec,
                                           const DataFrame& frame);

}  // namespace clarity

#endif  // CLARITY_STATS_HPP_
