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

#include "clarity/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/core.h>

#include "clarity/error.hpp"
#include "clarity/special_functions.hpp"

namespace clarity {

void VariableColumn::validate() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kRange, "non-finite value", {name, fmt::format("row {}", i)});
    }
    if (kind == ColumnKind::kDummy && v != 0.0 && v != 1.0) {
      throw Error(ErrorKind::kRange, "dummy column holds a value other than 0/1",
                  {name, fmt::format("row {}", i)});
    }
  }
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::kSize, "mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorKind::kSize, "sample SD needs >= 2 values");
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kSize, "pearson: length mismatch");
  if (x.size() < 3) throw Error(ErrorKind::kSize, "pearson needs n >= 3");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw Error(ErrorKind::kDegenerate, "pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean of (i+1)..j.
    const double shared = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kSize, "spearman: length mismatch");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) throw Error(ErrorKind::kSize, "correlation p-value needs n >= 3");
  if (!(std::fabs(r) <= 1.0)) throw Error(ErrorKind::kRange, "|r| > 1");
  if (std::fabs(r) == 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  return student_t_two_tailed_p(t, df);
}

CorrelationMatrix correlation_matrix(std::span<const VariableColumn> columns,
                                     CorrelationMethod method) {
  if (columns.size() < 2) throw Error(ErrorKind::kSize, "correlation matrix needs >= 2 columns");
  const std::size_t n = columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != n) {
      throw Error(ErrorKind::kSize, "columns differ in length", {c.name});
    }
    c.validate();
  }
  const std::size_t k = columns.size();
  CorrelationMatrix m;
  m.method = method;
  m.n = n;
  m.r.assign(k, std::vector<double>(k, 1.0));
  m.p.assign(k, std::vector<double>(k, 0.0));

  std::vector<std::vector<double>> ranked;
  if (method == CorrelationMethod::kSpearman) {
    for (const auto& c : columns) ranked.push_back(average_ranks(c.values));
  }
  auto data = [&](std::size_t i) -> std::span<const double> {
    return method == CorrelationMethod::kSpearman ? std::span<const double>(ranked[i])
                                                  : std::span<const double>(columns[i].values);
  };
  for (const auto& c : columns) m.names.push_back(c.name);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double r = 0.0;
      try {
        r = pearson(data(i), data(j));
      } catch (const Error& e) {
        throw Error(e.kind(), e.what(), {columns[i].name, columns[j].name});
      }
      m.r[i][j] = m.r[j][i] = r;
      m.p[i][j] = m.p[j][i] = correlation_p_value(r, n);
    }
  }
  return m;
}

std::vector<VariableColumn> dummy_code(std::span<const std::string> labels,
                                       std::string_view reference) {
  std::set<std::string> levels(labels.begin(), labels.end());
  if (!levels.count(std::string(reference))) {
    throw Error(ErrorKind::kCoding, "reference category does not occur in the data",
                {std::string(reference)});
  }
  std::vector<VariableColumn> out;
  for (const auto& level : levels) {
    if (level == reference) continue;
    VariableColumn col{level, {}, ColumnKind::kDummy};
    col.values.reserve(labels.size());
    for (const auto& l : labels) col.values.push_back(l == level ? 1.0 : 0.0);
    out.push_back(std::move(col));
  }
  return out;
}

// ---------------------------------------------------------------------------
// DataFrame

void DataFrame::check_rows(std::size_t n, const std::string& name) {
  if (!sized_) {
    rows_ = n;
    sized_ = true;
  } else if (n != rows_) {
    throw Error(ErrorKind::kSize, fmt::format("column has {} rows, frame has {}", n, rows_), {name});
  }
  if (has(name)) throw Error(ErrorKind::kSpec, "duplicate column name", {name});
}

void DataFrame::add_numeric(std::string name, std::vector<double> values, ColumnKind kind) {
  check_rows(values.size(), name);
  numeric_.emplace(name, VariableColumn{name, std::move(values), kind});
}

void DataFrame::add_categorical(std::string name, std::vector<std::optional<std::string>> labels) {
  check_rows(labels.size(), name);
  categorical_.emplace(std::move(name), std::move(labels));
}

const VariableColumn& DataFrame::numeric(const std::string& name) const {
  auto it = numeric_.find(name);
  if (it == numeric_.end()) throw Error(ErrorKind::kSpec, "no such numeric column", {name});
  return it->second;
}

const std::vector<std::optional<std::string>>& DataFrame::categorical(
    const std::string& name) const {
  auto it = categorical_.find(name);
  if (it == categorical_.end()) throw Error(ErrorKind::kSpec, "no such categorical column", {name});
  return it->second;
}

std::vector<bool> DataFrame::complete_rows(std::span<const std::string> names) const {
  std::vector<bool> keep(rows_, true);
  for (const auto& name : names) {
    if (auto it = numeric_.find(name); it != numeric_.end()) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (std::isnan(it->second.values[i])) keep[i] = false;
      }
    } else if (auto jt = categorical_.find(name); jt != categorical_.end()) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!jt->second[i]) keep[i] = false;
      }
    } else {
      throw Error(ErrorKind::kSpec, "no such column", {name});
    }
  }
  return keep;
}

CorrelationMatrix correlation_matrix(const DataFrame& frame, std::span<const std::string> names,
                                     CorrelationMethod method) {
  const auto keep = frame.complete_rows(names);
  std::vector<VariableColumn> cols;
  for (const auto& name : names) {
    const auto& src = frame.numeric(name);
    VariableColumn c{src.name, {}, src.kind};
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i]) c.values.push_back(src.values[i]);
    }
    cols.push_back(std::move(c));
  }
  return correlation_matrix(cols, method);
}

}  // namespace clarity
