/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


// Small descriptive statistics shared by the estimator, the condition
// checker and the dynamics diagnostics.

#pragma once

#include <cstddef>
#include <span>

namespace rpf::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> xs);
/// Standard error of the mean, sqrt(variance / size).
double standard_error(std::span<const double> xs);

/// Linear-interpolation quantile (type 7) of unsorted data, q in [0, 1].
double quantile(std::span<const double> xs, double q);

/// Jackknife standard error of the sample variance.
double variance_standard_error(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)); alpha is one of
/// 0.10, 0.05, 0.01, 0.001.
double ks_critical_value(std::size_t n, std::size_t m, double alpha = 0.01);

}  // namespace rpf::stats
