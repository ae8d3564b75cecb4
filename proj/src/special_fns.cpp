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

#include "rpf/special_fns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "rpf/error.hpp"

namespace rpf {

namespace {

// Ai(0) = 1/(3^{2/3} Gamma(2/3)), -Ai'(0) = 1/(3^{1/3} Gamma(1/3)).
constexpr double kAi0 = 0.355028053887817239260;
constexpr double kAip0 = 0.258819403792806798405;

constexpr double kDiagonalThreshold = 1e-6;

}  // namespace

namespace detail {

AiryValue airy_series(double x) {
    // Ai = c1 f - c2 g with f = sum 3^k (1/3)_k x^{3k}/(3k)!,
    // g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
    const double x3 = x * x * x;
    double f = 1.0, g = x, fp = 0.0, gp = 1.0;
    double tf = 1.0, tg = x, tfp = 0.5 * x * x, tgp = 1.0;
    fp = tfp;
    for (int k = 0; k < 200; ++k) {
        const double k3 = 3.0 * k;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        tgp *= x3 / ((k3 + 1.0) * (k3 + 3.0));
        f += tf;
        g += tg;
        gp += tgp;
        if (k >= 1) {
            tfp *= x3 / (k3 * (k3 + 2.0));
            fp += tfp;
        }
        const double scale = std::abs(f) + std::abs(g) + std::abs(fp) + std::abs(gp);
        if (k > 2 && std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) < 1e-18 * scale)
            break;
    }
    return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

AiryValue airy_asymptotic(double x) {
    // u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!), v_k = -(6k+1)/(6k-1) u_k.
    const double t = std::abs(x);
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double t14 = std::sqrt(std::sqrt(t));

    constexpr int kMaxTerms = 80;
    std::vector<double> u(kMaxTerms), v(kMaxTerms);
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kMaxTerms; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
               ((2.0 * k - 1.0) * 216.0 * k);
        v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }

    if (x > 0.0) {
        // Sum (-1)^k c_k zeta^{-k}, stopping before the terms start growing.
        auto sum_mono = [&](const std::vector<double>& c) {
            double s = 0.0, zk = 1.0, prev = INFINITY;
            for (int k = 0; k < kMaxTerms; ++k) {
                const double term = c[k] * zk;
                if (std::abs(term) > prev) break;
                s += (k % 2 == 0) ? term : -term;
                prev = std::abs(term);
                if (prev < 1e-17 * std::abs(s)) break;
                zk /= zeta;
            }
            return s;
        };
        const double e = std::exp(-zeta) / (2.0 * sqrt_pi);
        return {e / t14 * sum_mono(u), -e * t14 * sum_mono(v)};
    }

    // Oscillatory side: even and odd subseries, truncated together at the
    // smallest term of the combined sequence.
    double even_u = 0.0, odd_u = 0.0, even_v = 0.0, odd_v = 0.0;
    double zk = 1.0, prev = INFINITY;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double mag = std::max(std::abs(u[k]), std::abs(v[k])) * zk;
        if (mag > prev) break;
        prev = mag;
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            even_u += sign * u[k] * zk;
            even_v += sign * v[k] * zk;
        } else {
            odd_u += sign * u[k] * zk;
            odd_v += sign * v[k] * zk;
        }
        if (mag < 1e-17) break;
        zk /= zeta;
    }
    const double phase = zeta - 0.25 * std::numbers::pi;
    const double c = std::cos(phase), s = std::sin(phase);
    return {(c * even_u + s * odd_u) / (sqrt_pi * t14), t14 / sqrt_pi * (s * even_v - c * odd_v)};
}

AiryValue airy_integrated(double x) {
    constexpr double kMaxStep = 0.5;
    const double x_start = kAiryAsymptoticHigh;
    const auto start = airy_asymptotic(x_start);
    const int steps = std::max(1, static_cast<int>(std::ceil((x_start - x) / kMaxStep)));
    const double h = (x - x_start) / steps;
    double x0 = x_start, y = start.ai, yp = start.aip;
    for (int i = 0; i < steps; ++i) {
        // Taylor coefficients about x0: (k+2)(k+1) c_{k+2} = x0 c_k + c_{k-1}.
        double cm1 = 0.0, c0 = y, c1 = yp;
        double hk = 1.0;
        double ny = c0 + c1 * h, nyp = c1;
        for (int k = 0; k < 80; ++k) {
            const double c2 = (x0 * c0 + cm1) / ((k + 2.0) * (k + 1.0));
            hk *= h;
            const double ty = c2 * hk * h, typ = (k + 2.0) * c2 * hk;
            ny += ty;
            nyp += typ;
            if (k > 4 && std::abs(ty) + std::abs(typ) < 1e-18 * (std::abs(ny) + std::abs(nyp))) break;
            cm1 = c0;
            c0 = c1;
            c1 = c2;
        }
        x0 = (i + 1 == steps) ? x : x0 + h;
        y = ny;
        yp = nyp;
    }
    return {y, yp};
}

}  // namespace detail

AiryValue airy(double x) {
    if (!(x >= kAiryMin && x <= kAiryMax))
        throw RangeError("airy: argument " + std::to_string(x) + " outside [" +
                         std::to_string(kAiryMin) + ", " + std::to_string(kAiryMax) + "]");
    if (x >= kAirySeriesLow && x <= kAirySeriesHigh) return detail::airy_series(x);
    if (x > kAirySeriesHigh && x < kAiryAsymptoticHigh) return detail::airy_integrated(x);
    return detail::airy_asymptotic(x);
}

std::string to_string(KernelKind kind) { return kind == KernelKind::airy ? "airy" : "sine"; }

KernelKind parse_kernel(const std::string& name) {
    if (name == "airy") return KernelKind::airy;
    if (name == "sine") return KernelKind::sine;
    throw ArgumentError("unknown kernel '" + name + "' (expected airy|sine)");
}

double airy_kernel(double x, double y) {
    if (std::abs(x - y) < kDiagonalThreshold) {
        const double m = 0.5 * (x + y);
        const auto a = airy(m);
        return a.aip * a.aip - m * a.ai * a.ai;
    }
    const auto ax = airy(x);
    const auto ay = airy(y);
    return (ax.ai * ay.aip - ax.aip * ay.ai) / (x - y);
}

double sine_kernel(double x, double y) {
    const double d = std::numbers::pi * (x - y);
    if (d == 0.0) return 1.0;
    return std::sin(d) / d;
}

double kernel(KernelKind kind, double x, double y) {
    return kind == KernelKind::airy ? airy_kernel(x, y) : sine_kernel(x, y);
}

double determinant(std::span<double> a, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            det = -det;
        }
        const double p = a[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / p;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
        }
    }
    return det;
}

double det_correlation(KernelKind kind, std::span<const double> points) {
    const std::size_t n = points.size();
    if (n == 0 || n > 16) throw ArgumentError("det_correlation supports 1..16 points");
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double k = kernel(kind, points[i], points[j]);
            a[i * n + j] = k;
            a[j * n + i] = k;
        }
    }
    return determinant(a, n);
}

}  // namespace rpf
