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

#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

std::optional<std::vector<double>> normal_equations_exact(
    const std::vector<std::vector<long long>>& columns, const std::vector<long long>& y) {
  const std::size_t n = y.size();
  const std::size_t p = columns.size() + 1;
  auto x = [&](std::size_t row, std::size_t col) -> long long {
    return col == 0 ? 1 : columns[col - 1][row];
  };
  // Augmented [X'X | X'y].
  std::vector<std::vector<Rational>> m(p, std::vector<Rational>(p + 1));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      long long s = 0;
      for (std::size_t r = 0; r < n; ++r) s += x(r, i) * x(r, j);
      m[i][j] = s;
    }
    long long s = 0;
    for (std::size_t r = 0; r < n; ++r) s += x(r, i) * y[r];
    m[i][p] = s;
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t pivot = c;
    while (pivot < p && m[pivot][c] == 0) ++pivot;
    if (pivot == p) return std::nullopt;
    std::swap(m[c], m[pivot]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= p; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> b(p);
  for (std::size_t i = 0; i < p; ++i) b[i] = static_cast<double>(m[i][p] / m[i][i]);
  return b;
}

double incomplete_beta_quadrature(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  boost::math::quadrature::tanh_sinh<long double> integrator;
  const long double la = a, lb = b, lx = x;
  // Both pieces are written so any endpoint singularity sits at 0:
  //   left  = int_0^x     t^(a-1) (1-t)^(b-1) dt
  //   right = int_0^(1-x) s^(b-1) (1-s)^(a-1) ds
  const long double left = integrator.integrate(
      [&](long double t) { return std::pow(t, la - 1) * std::pow(1.0L - t, lb - 1); }, 0.0L, lx);
  const long double right = integrator.integrate(
      [&](long double s) { return std::pow(s, lb - 1) * std::pow(1.0L - s, la - 1); }, 0.0L,
      1.0L - lx);
  return static_cast<double>(left / (left + right));
}

double t_two_tailed_quadrature(double t, double df) {
  const long double v = df;
  const long double c = std::exp(std::lgamma((v + 1) / 2) - std::lgamma(v / 2)) /
                        std::sqrt(v * 3.14159265358979323846264338327950288L);
  auto f = [&](long double u) { return c * std::pow(1.0L + u * u / v, -(v + 1) / 2); };
  const long double a = std::fabs(t);
  boost::math::quadrature::exp_sinh<long double> tail;
  return static_cast<double>(2.0L * tail.integrate([&](long double u) { return f(a + u); }));
}

std::vector<double> average_ranks_counting(std::span<const double> values) {
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (double v : values) {
      less += v < values[i] ? 1 : 0;
      equal += v == values[i] ? 1 : 0;
    }
    r[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
  }
  return r;
}

double pearson_direct(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

ModeCount mode_by_counting(const std::vector<std::string>& labels) {
  if (labels.empty()) throw std::invalid_argument("no labels");
  std::map<std::string, int> counts;
  for (const auto& l : labels) ++counts[l];
  ModeCount m;
  for (const auto& [label, c] : counts) {
    if (c > m.count) {
      m = {label, c, false, 0.0};
    } else if (c == m.count) {
      m.tied = true;
    }
  }
  m.agreement_pct = 100.0 * m.count / static_cast<double>(labels.size());
  return m;
}

}  // namespace oracle
