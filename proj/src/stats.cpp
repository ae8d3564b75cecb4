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


#include "rpf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rpf/error.hpp"

namespace rpf::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double standard_error(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

double quantile(std::span<const double> xs, double q) {
    if (xs.empty()) throw ArgumentError("quantile of an empty sample");
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double variance_standard_error(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 3) return 0.0;
    // Leave-one-out variances from running sums.
    double s1 = 0.0, s2 = 0.0;
    for (double x : xs) {
        s1 += x;
        s2 += x * x;
    }
    const double nn = static_cast<double>(n);
    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = s1 - xs[i], b = s2 - xs[i] * xs[i];
        loo[i] = (b - a * a / (nn - 1.0)) / (nn - 2.0);
    }
    const double m = mean(loo);
    double acc = 0.0;
    for (double v : loo) acc += (v - m) * (v - m);
    return std::sqrt((nn - 1.0) / nn * acc);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ArgumentError("ks_statistic needs two non-empty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == t) ++i;
        while (j < y.size() && y[j] == t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    double c;
    if (alpha == 0.10) c = 1.224;
    else if (alpha == 0.05) c = 1.358;
    else if (alpha == 0.01) c = 1.628;
    else if (alpha == 0.001) c = 1.949;
    else throw ArgumentError("ks_critical_value: unsupported alpha");
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace rpf::stats
