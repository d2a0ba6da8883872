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

#ifndef CLARITY_SPECIAL_FUNCTIONS_HPP_
#define CLARITY_SPECIAL_FUNCTIONS_HPP_

namespace clarity {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// evaluated with a modified-Lentz continued fraction. Absolute error is below
// 1e-12 over the domain used for t and F tails. Throws Error(kRange) outside
// the domain.
double regularized_incomplete_beta(double a, double b, double x);

// Student t with `df` degrees of freedom.
double student_t_cdf(double t, double df);
// P(|T| >= |t|).
double student_t_two_tailed_p(double t, double df);

// F distribution with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);
// P(F >= f), computed directly rather than as 1 - cdf.
double f_upper_p(double f, double d1, double d2);

}  // namespace clarity

#endif  // CLARITY_SPECIAL_FUNCTIONS_HPP_
