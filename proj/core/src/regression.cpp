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

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <fmt/core.h>
#include "json.hpp"

#include "clarity/error.hpp"
#include "clarity/special_functions.hpp"
#include "clarity/stats.hpp"

namespace clarity {

using json = nlohmann::json;

OlsFit ols_fit(std::span<const VariableColumn> predictors, const VariableColumn& y) {
  const std::size_t n = y.values.size();
  const std::size_t k = predictors.size();
  if (n <= k + 1) {
    throw Error(ErrorKind::kSize, fmt::format("OLS needs n > k + 1 (n={}, k={})", n, k));
  }
  y.validate();
  for (const auto& c : predictors) {
    if (c.values.size() != n) throw Error(ErrorKind::kSize, "predictor length differs", {c.name});
    c.validate();
  }

  const auto p = static_cast<Eigen::Index>(k + 1);
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), p);
  Eigen::VectorXd Y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    X(row, 0) = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      X(row, static_cast<Eigen::Index>(j + 1)) = predictors[j].values[i];
    }
    Y(row) = y.values[i];
  }

  OlsFit fit;
  fit.n = n;
  fit.names.emplace_back("(Intercept)");
  for (const auto& c : predictors) fit.names.push_back(c.name);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.rows(), X.cols());
  qr.setThreshold(1e-10);
  qr.compute(X);
  if (qr.rank() < p) {
    std::vector<std::string> dependent;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < p; ++i) {
      dependent.push_back(fit.names[static_cast<std::size_t>(perm(i))]);
    }
    std::sort(dependent.begin(), dependent.end());
    throw Error(ErrorKind::kCollinearity, "design matrix is rank deficient", std::move(dependent));
  }

  const Eigen::VectorXd b = qr.solve(Y);
  const Eigen::VectorXd resid = Y - X * b;
  fit.rss = resid.squaredNorm();
  fit.tss = (Y.array() - Y.mean()).matrix().squaredNorm();
  if (fit.tss <= 0.0) throw Error(ErrorKind::kDegenerate, "dependent variable is constant", {y.name});

  fit.df_model = static_cast<int>(k);
  fit.df_resid = static_cast<int>(n - k - 1);
  fit.r2 = 1.0 - fit.rss / fit.tss;
  fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / fit.df_resid;
  if (k > 0) {
    fit.f = (fit.r2 / fit.df_model) / ((1.0 - fit.r2) / fit.df_resid);
    fit.f_p = f_upper_p(fit.f, fit.df_model, fit.df_resid);
  }

  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd cov_perm = Rinv * Rinv.transpose();
  const Eigen::MatrixXd cov =
      qr.colsPermutation() * cov_perm * qr.colsPermutation().transpose();
  const double sigma2 = fit.rss / fit.df_resid;

  for (Eigen::Index j = 0; j < p; ++j) {
    const double bj = b(j);
    const double se = std::sqrt(std::max(0.0, sigma2 * cov(j, j)));
    const double t = se > 0.0 ? bj / se
                              : (bj == 0.0 ? std::nan("") : std::copysign(INFINITY, bj));
    fit.b.push_back(bj);
    fit.se.push_back(se);
    fit.t.push_back(t);
    fit.p.push_back(student_t_two_tailed_p(t, fit.df_resid));
  }
  fit.residuals.assign(resid.data(), resid.data() + resid.size());
  return fit;
}

std::vector<double> standardized_betas(const OlsFit& fit,
                                       std::span<const VariableColumn> predictors,
                                       const VariableColumn& y) {
  if (fit.b.size() != predictors.size() + 1) {
    throw Error(ErrorKind::kSpec, "fit and predictor list disagree");
  }
  const double sy = sample_sd(y.values);
  std::vector<double> beta;
  beta.reserve(predictors.size());
  for (std::size_t j = 0; j < predictors.size(); ++j) {
    const double sx = sample_sd(predictors[j].values);
    if (sx <= 0.0) {
      throw Error(ErrorKind::kDegenerate, "zero-variance predictor", {predictors[j].name});
    }
    beta.push_back(fit.b[j + 1] * sx / sy);
  }
  return beta;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Splits "A × B" (also accepts "A x B" and "A:B").
std::optional<std::pair<std::string, std::string>> split_interaction(std::string_view term) {
  for (std::string_view sep : {kInteractionSeparator, std::string_view(" x "), std::string_view(":")}) {
    const auto pos = term.find(sep);
    if (pos != std::string_view::npos) {
      return std::make_pair(std::string(trim(term.substr(0, pos))),
                            std::string(trim(term.substr(pos + sep.size()))));
    }
  }
  return std::nullopt;
}

// Source columns a term reads from.
std::vector<std::string> base_columns(const std::string& term) {
  if (auto parts = split_interaction(term)) return {parts->first, parts->second};
  return {term};
}

std::vector<double> masked(const std::vector<double>& values, const std::vector<bool>& keep) {
  std::vector<double> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.push_back(values[i]);
  }
  return out;
}

// Columns contributed by one side of a term (numeric: one; categorical: one
// dummy per non-reference level).
std::vector<VariableColumn> expand_simple(const std::string& name, const DataFrame& frame,
                                          const std::vector<bool>& keep,
                                          std::string_view reference) {
  if (frame.has_numeric(name)) {
    const auto& src = frame.numeric(name);
    return {VariableColumn{src.name, masked(src.values, keep), src.kind}};
  }
  if (frame.has_categorical(name)) {
    const auto& labels = frame.categorical(name);
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i]) kept.push_back(*labels[i]);
    }
    return dummy_code(kept, reference);
  }
  throw Error(ErrorKind::kSpec, "unknown column", {name});
}

std::vector<VariableColumn> expand_term(const std::string& term, const DataFrame& frame,
                                        const std::vector<bool>& keep,
                                        std::string_view reference) {
  auto parts = split_interaction(term);
  if (!parts) return expand_simple(term, frame, keep, reference);
  const auto left = expand_simple(parts->first, frame, keep, reference);
  const auto right = expand_simple(parts->second, frame, keep, reference);
  std::vector<VariableColumn> out;
  for (const auto& a : left) {
    for (const auto& b : right) {
      VariableColumn c;
      c.name = a.name + std::string(kInteractionSeparator) + b.name;
      c.kind = (a.kind == ColumnKind::kDummy && b.kind == ColumnKind::kDummy)
                   ? ColumnKind::kDummy
                   : ColumnKind::kContinuous;
      c.values.resize(a.values.size());
      for (std::size_t i = 0; i < a.values.size(); ++i) c.values[i] = a.values[i] * b.values[i];
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

std::vector<VariableColumn> interaction_terms(
    std::span<const std::pair<std::string, std::string>> pairs, const DataFrame& frame,
    std::string_view reference) {
  std::vector<std::string> used;
  for (const auto& [a, b] : pairs) {
    for (const auto& name : {a, b}) {
      if (!frame.has(name)) throw Error(ErrorKind::kSpec, "interaction names a missing column", {name});
      used.push_back(name);
    }
  }
  const auto keep = frame.complete_rows(used);
  std::vector<VariableColumn> out;
  for (const auto& [a, b] : pairs) {
    auto cols = expand_term(a + std::string(kInteractionSeparator) + b, frame, keep, reference);
    out.insert(out.end(), std::make_move_iterator(cols.begin()), std::make_move_iterator(cols.end()));
  }
  return out;
}

void RegressionModelSpec::validate() const {
  if (dependent.empty()) throw Error(ErrorKind::kSpec, "regression spec has no dependent variable");
  if (steps.empty()) throw Error(ErrorKind::kSpec, "regression spec has no steps");
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (steps[s].empty()) throw Error(ErrorKind::kSpec, fmt::format("step {} is empty", s + 1));
    std::set<std::string> current(steps[s].begin(), steps[s].end());
    if (current.size() != steps[s].size()) {
      throw Error(ErrorKind::kSpec, fmt::format("step {} repeats a term", s + 1));
    }
    if (current.count(dependent)) {
      throw Error(ErrorKind::kSpec, "dependent variable used as a predictor", {dependent});
    }
    if (s == 0) continue;
    std::set<std::string> previous(steps[s - 1].begin(), steps[s - 1].end());
    std::vector<std::string> dropped;
    for (const auto& t : previous) {
      if (!current.count(t)) dropped.push_back(t);
    }
    if (!dropped.empty() || current.size() <= previous.size()) {
      throw Error(ErrorKind::kSpec,
                  fmt::format("step {} does not strictly extend step {}", s + 1, s),
                  std::move(dropped));
    }
  }
}

RegressionModelSpec RegressionModelSpec::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "regression spec is not valid JSON", {e.what()});
  }
  RegressionModelSpec spec;
  try {
    spec.dependent = j.at("dependent").get<std::string>();
    spec.reference = j.value("reference", std::string("Society"));
    if (j.contains("steps")) {
      spec.steps = j["steps"].get<std::vector<std::vector<std::string>>>();
    } else if (j.contains("blocks")) {
      // Incremental blocks: each step adds its block to the previous step.
      std::vector<std::string> acc;
      for (const auto& block : j["blocks"]) {
        for (const auto& t : block) acc.push_back(t.get<std::string>());
        spec.steps.push_back(acc);
      }
    } else {
      throw Error(ErrorKind::kSpec, "regression spec needs \"steps\" or \"blocks\"");
    }
    if (j.contains("labels")) spec.step_labels = j["labels"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSpec, "malformed regression spec", {e.what()});
  }
  spec.validate();
  return spec;
}

std::string RegressionModelSpec::to_json() const {
  json j;
  j["dependent"] = dependent;
  j["reference"] = reference;
  j["steps"] = steps;
  if (!step_labels.empty()) j["labels"] = step_labels;
  return j.dump(2);
}

const PredictorResult* RegressionStepResult::find(std::string_view name) const {
  for (const auto& p : predictors) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

HierarchicalResult hierarchical_regression(const RegressionModelSpec& spec,
                                           const DataFrame& frame) {
  spec.validate();
  std::vector<std::string> used = {spec.dependent};
  for (const auto& term : spec.steps.back()) {
    for (const auto& base : base_columns(term)) {
      if (!frame.has(base)) throw Error(ErrorKind::kSpec, "spec names a missing column", {base});
      used.push_back(base);
    }
  }
  if (!frame.has_numeric(spec.dependent)) {
    throw Error(ErrorKind::kSpec, "dependent variable must be numeric", {spec.dependent});
  }
  const auto keep = frame.complete_rows(used);

  HierarchicalResult result;
  result.dependent = spec.dependent;
  result.reference = spec.reference;
  const VariableColumn y{spec.dependent, masked(frame.numeric(spec.dependent).values, keep),
                         ColumnKind::kContinuous};
  result.n = y.values.size();
  result.n_dropped = frame.rows() - result.n;

  double prev_r2 = 0.0;
  int prev_k = 0;
  for (std::size_t s = 0; s < spec.steps.size(); ++s) {
    std::vector<VariableColumn> X;
    std::vector<std::string> terms;
    for (const auto& term : spec.steps[s]) {
      auto cols = expand_term(term, frame, keep, spec.reference);
      terms.insert(terms.end(), cols.size(), term);
      X.insert(X.end(), std::make_move_iterator(cols.begin()), std::make_move_iterator(cols.end()));
    }
    const OlsFit fit = ols_fit(X, y);
    const auto beta = standardized_betas(fit, X, y);

    RegressionStepResult step;
    step.label = s < spec.step_labels.size() ? spec.step_labels[s] : std::to_string(s + 1);
    step.intercept = fit.b[0];
    for (std::size_t j = 0; j < X.size(); ++j) {
      step.predictors.push_back(
          {X[j].name, terms[j], fit.b[j + 1], beta[j], fit.se[j + 1], fit.t[j + 1], fit.p[j + 1]});
    }
    step.r2 = fit.r2;
    step.adj_r2 = fit.adj_r2;
    step.f = fit.f;
    step.f_p = fit.f_p;
    step.df_model = fit.df_model;
    step.df_resid = fit.df_resid;
    step.n = fit.n;
    step.delta_r2 = fit.r2 - prev_r2;
    step.df_change = fit.df_model - prev_k;
    step.f_change = (step.delta_r2 / step.df_change) / ((1.0 - fit.r2) / fit.df_resid);
    step.f_change_p = f_upper_p(step.f_change, step.df_change, fit.df_resid);
    prev_r2 = fit.r2;
    prev_k = fit.df_model;
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace clarity
