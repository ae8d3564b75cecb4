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

#pragma once

#include <span>
#include <string>

namespace rpf {

struct AiryValue {
    double ai;
    double aip;
};

/// Documented accuracy range of `airy`.
inline constexpr double kAiryMin = -40.0;
inline constexpr double kAiryMax = 15.0;
/// The Maclaurin series is used on [kAirySeriesLow, kAirySeriesHigh] and
/// the asymptotic forms below kAirySeriesLow and from kAiryAsymptoticHigh
/// on. In between, Taylor steps of the Airy equation run leftwards from
/// kAiryAsymptoticHigh, the direction in which Ai dominates; the series
/// there loses relative accuracy to cancellation as Ai decays. The
/// oscillatory expansion only reaches 1e-10 beyond about -7, while the
/// series stays below 1e-11 down to -8.
inline constexpr double kAirySeriesLow = -8.0;
inline constexpr double kAirySeriesHigh = 2.0;
inline constexpr double kAiryAsymptoticHigh = 12.0;

/// Ai(x) and Ai'(x) for x in [kAiryMin, kAiryMax]; RangeError outside.
AiryValue airy(double x);

namespace detail {
// Exposed for the crossover continuity tests.
AiryValue airy_series(double x);
AiryValue airy_asymptotic(double x);
AiryValue airy_integrated(double x);
}  // namespace detail

enum class KernelKind { airy, sine };

std::string to_string(KernelKind kind);
KernelKind parse_kernel(const std::string& name);

/// K(x,y) = (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y). For |x - y| < 1e-6 the
/// diagonal value Ai'(m)^2 - m Ai(m)^2 at the midpoint m is used, which is
/// the diagonal limit plus its first-order correction.
double airy_kernel(double x, double y);

/// sin(pi(x-y)) / (pi(x-y)), 1 on the diagonal.
double sine_kernel(double x, double y);

double kernel(KernelKind kind, double x, double y);

/// det[K(x_i, x_j)] by partial-pivoted elimination; 1 <= size <= 16.
double det_correlation(KernelKind kind, std::span<const double> points);

/// Determinant of a dense row-major n x n matrix (destroyed).
double determinant(std::span<double> a, std::size_t n);

}  // namespace rpf
